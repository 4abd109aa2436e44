#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "memflow/kernel.hpp"

using namespace memflow;

namespace {

// Closed-form cosine transform of mu0*exp(-lambda s).
double exp_cosine(double mu0, double lambda, double w) {
  return mu0 * lambda / (lambda * lambda + w * w);
}

Kernel growing_tabulated() {
  // mu(s) = e^{-s} + s on [0, 10]: derivative turns positive, tail grows.
  std::vector<double> s, v;
  for (int i = 0; i <= 400; ++i) {
    double x = 10.0 * i / 400.0;
    s.push_back(x);
    v.push_back(std::exp(-x) + x);
  }
  return Kernel::tabulated(s, v);
}

}  // namespace

TEST_CASE("exponential cosine transform matches the closed form") {
  Kernel k = Kernel::exponential(1.0, 1.0);
  CHECK(k.cosine(0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(k.cosine(1.0) == doctest::Approx(0.5).epsilon(1e-10));

  auto grid = default_omega_grid();
  auto mc = k.cosine(grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double exact = exp_cosine(1.0, 1.0, grid[i]);
    worst = std::max(worst, std::abs(mc[i] - exact) / exact);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("fourier transform carries the sine part with hermitian symmetry") {
  Kernel k = Kernel::exponential(2.0, 0.5);
  for (double w : {0.3, 2.0, 11.0}) {
    auto f = k.fourier(w);
    // mu_F = mu0/(lambda + i w)
    std::complex<double> exact = 2.0 / std::complex<double>(0.5, w);
    CHECK(std::abs(f - exact) <= 1e-9 * std::abs(exact));
    CHECK(std::abs(k.fourier(-w) - std::conj(f)) <= 1e-14);
  }
}

TEST_CASE("total viscosity closed forms") {
  CHECK(Kernel::exponential(1.0, 1.0).total_viscosity() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Kernel::exponential(2.0, 1.0).total_viscosity() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(Kernel::polynomial(1.0, 3.0).total_viscosity() == doctest::Approx(0.5).epsilon(1e-12));
  Kernel zero = Kernel::exponential(0.0, 1.0);
  CHECK(zero.total_viscosity() == 0.0);
  CHECK(zero.degenerate());
}

TEST_CASE("degenerate zero kernel transforms to zero and is inadmissible") {
  Kernel zero = Kernel::exponential(0.0, 1.0);
  for (double w : {0.0, 1.0, 10.0}) CHECK(zero.cosine(w) == doctest::Approx(0.0));
  auto rep = check_admissibility(zero);
  CHECK_FALSE(rep.cosine_positive);
  CHECK_FALSE(rep.admissible());
}

TEST_CASE("finite differences agree with analytic derivatives") {
  for (Kernel k : {Kernel::exponential(1.3, 0.8), Kernel::polynomial(1.0, 2.5),
                   Kernel::prony({0.5, 0.8}, {1.0, 3.0})}) {
    double h1 = 1e-5, h2 = 1e-4;  // balance truncation against roundoff
    double worst1 = 0.0, worst2 = 0.0;
    for (double s : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      double fd1 = (k.mu(s + h1) - k.mu(s - h1)) / (2.0 * h1);
      double fd2 = (k.mu(s + h2) - 2.0 * k.mu(s) + k.mu(s - h2)) / (h2 * h2);
      worst1 = std::max(worst1, std::abs(fd1 - k.dmu(s)) / std::abs(k.dmu(s)));
      worst2 = std::max(worst2, std::abs(fd2 - k.d2mu(s)) / std::abs(k.d2mu(s)));
    }
    CHECK(worst1 <= 1e-6);
    CHECK(worst2 <= 1e-6);
  }
}

TEST_CASE("segment integrals are exact per family") {
  Kernel e = Kernel::exponential(1.0, 2.0);
  CHECK(e.segment_integral(0.3, 1.1) ==
        doctest::Approx((std::exp(-0.6) - std::exp(-2.2)) / 2.0).epsilon(1e-14));
  Kernel p = Kernel::polynomial(1.0, 2.0);
  CHECK(p.segment_integral(1.0, 3.0) == doctest::Approx(0.5 - 0.25).epsilon(1e-14));
}

TEST_CASE("exponential kernels classify as exponential decay") {
  for (double lam : {0.5, 1.0, 2.0}) {
    Kernel k = Kernel::exponential(1.0, lam);
    auto rep = check_admissibility(k);
    CHECK(rep.cosine_positive);
    CHECK(rep.diss4_ok());
    CHECK(rep.decay_class == DecayClass::exponential);
    REQUIRE(rep.tightest_xi.has_value());
    CHECK(rep.tightest_xi->profile() == DecayRate::Profile::constant);
    CHECK(rep.tightest_xi->parameter() == doctest::Approx(lam).epsilon(1e-6));
  }
}

TEST_CASE("polynomial kernels classify as polynomial decay") {
  for (double c : {2.0, 3.0}) {
    Kernel k = Kernel::polynomial(1.0, c);
    auto rep = check_admissibility(k);
    CHECK(rep.cosine_positive);
    CHECK(rep.diss4_ok());
    CHECK(rep.decay_class == DecayClass::polynomial);
    REQUIRE(rep.tightest_xi.has_value());
    CHECK(rep.tightest_xi->profile() == DecayRate::Profile::inverse_linear);
    // ratio mu''/(-mu') = (c+1)/(1+s)
    CHECK(rep.tightest_xi->parameter() == doctest::Approx(c + 1.0).epsilon(1e-6));
  }
}

TEST_CASE("tightest rate is non-increasing on its grid") {
  for (Kernel k : {Kernel::exponential(1.0, 1.0), Kernel::polynomial(1.0, 2.0),
                   Kernel::prony({0.4, 0.6}, {0.7, 4.0})}) {
    auto rep = check_admissibility(k);
    REQUIRE(rep.tightest_xi.has_value());
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(k.tau_max() * i / 100.0);
    CHECK(rep.tightest_xi->non_increasing(grid));
  }
}

TEST_CASE("growing kernel fails the dissipativity conditions") {
  Kernel k = growing_tabulated();
  auto rep = check_admissibility(k);
  CHECK_FALSE(rep.dmu_negative);
  CHECK_FALSE(rep.diss4_ok());
  CHECK_FALSE(rep.admissible());
}

TEST_CASE("non-integrable tabulated kernel is rejected by the transform") {
  std::vector<double> s, v;
  for (int i = 0; i <= 100; ++i) {
    s.push_back(0.1 * i);
    v.push_back(1.0 + 0.1 * i);  // mu = 1 + s
  }
  Kernel k = Kernel::tabulated(s, v);
  CHECK_FALSE(k.integrable());
  CHECK_THROWS_AS(k.cosine(std::vector<double>{0.0, 1.0}), std::invalid_argument);
  auto rep = check_admissibility(k);
  CHECK_FALSE(rep.admissible());
}

TEST_CASE("prony admissibility and cosine positivity") {
  Kernel k = Kernel::prony({0.5, 0.3}, {1.0, 5.0});
  auto rep = check_admissibility(k);
  CHECK(rep.cosine_positive);
  CHECK(rep.diss4_ok());
  auto mc = k.cosine(std::vector<double>{0.0, 2.0});
  CHECK(mc[0] == doctest::Approx(0.5 / 1.0 + 0.3 / 5.0).epsilon(1e-9));
  CHECK(mc[1] == doctest::Approx(0.5 * 1.0 / (1.0 + 4.0) + 0.3 * 5.0 / (25.0 + 4.0)).epsilon(1e-9));
}

TEST_CASE("admissibility with an explicit rate profile") {
  Kernel k = Kernel::exponential(1.0, 2.0);
  // xi below the ratio (=2) is admissible; above it violates the bound
  auto ok = check_admissibility(k, DecayRate::constant(1.5));
  CHECK(ok.ratio_bound_ok);
  auto bad = check_admissibility(k, DecayRate::constant(2.5));
  CHECK_FALSE(bad.ratio_bound_ok);
}

TEST_CASE("decay rate integrals have the expected closed forms") {
  CHECK(DecayRate::constant(2.0).integral(3.0) == doctest::Approx(6.0));
  CHECK(DecayRate::inverse_linear(3.0).integral(4.0) == doctest::Approx(3.0 * std::log(5.0)));
  auto gen = DecayRate::sampled({0.0, 1.0, 2.0}, {1.0, 0.5, 0.25});
  CHECK(gen.integral(2.0) == doctest::Approx(0.75 + 0.375));
  CHECK(gen(1.5) == doctest::Approx(0.375));
}

TEST_CASE("cosine positivity holds for the built-in admissible families") {
  auto grid = default_omega_grid();
  for (Kernel k : {Kernel::exponential(1.0, 0.5), Kernel::exponential(1.0, 1.0),
                   Kernel::exponential(1.0, 2.0), Kernel::polynomial(1.0, 2.0),
                   Kernel::polynomial(1.0, 3.0), Kernel::prony({0.5, 0.5}, {0.5, 4.0})}) {
    auto mc = cosine_transform(k, grid);
    for (double v : mc) CHECK(v > 0.0);
  }
}
