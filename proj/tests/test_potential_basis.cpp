#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "qhj/basis.hpp"
#include "qhj/potential.hpp"

using namespace qhj;
namespace {
constexpr double kPi = std::numbers::pi;
const PhysicalConstants kNatural{};
}  // namespace

TEST_CASE("potential kinds evaluate and locate turning points") {
  const Potential free_pot = Potential::free_space();
  CHECK(free_pot(3.7) == 0.0);
  CHECK(free_pot.turning_points(0.5).empty());

  const Potential harm = Potential::harmonic(1.0);
  CHECK(harm(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(harm(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  const auto tp = harm.turning_points(0.5);
  REQUIRE(tp.size() == 2);
  CHECK(tp[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(tp[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(harm.turning_points(-1.0).empty());

  const Potential lin = Potential::linear(2.0);
  CHECK(lin(1.5) == 3.0);
  const auto lt = lin.turning_points(3.0);
  REQUIRE(lt.size() == 1);
  CHECK(lt[0] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("tabulated potential interpolates, stays monotone, guards range") {
  std::vector<double> xs, vs;
  for (int i = 0; i <= 400; ++i) {
    const double x = -2.0 + 4.0 * i / 400.0;
    xs.push_back(x);
    vs.push_back(x * x);  // quadratic well sampled densely
  }
  const Potential tab = Potential::tabulated(xs, vs);
  CHECK(tab(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tab(1.234) == doctest::Approx(1.234 * 1.234).epsilon(1e-6));
  CHECK_THROWS_AS(tab(5.0), DomainError);

  const auto roots = tab.turning_points(1.0);
  REQUIRE(roots.size() == 2);
  CHECK(std::fabs(roots[0] + 1.0) < 1e-3);
  CHECK(std::fabs(roots[1] - 1.0) < 1e-3);

  CHECK_THROWS_AS(Potential::tabulated({0, 1, 2}, {0, 1, 2}), ConfigError);
  CHECK_THROWS_AS(Potential::tabulated({0, 1, 1, 2}, {0, 1, 2, 3}),
                  ConfigError);
}

TEST_CASE("tabulated CSV ingestion") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "qhj_test_potential.csv";
  {
    std::ofstream out(path);
    out << "x,V\n";
    for (int i = 0; i <= 10; ++i)
      out << (0.5 * i) << "," << (0.1 * i) << "\n";
  }
  const Potential p = Potential::tabulated_from_csv(path.string());
  CHECK(p(2.5) == doctest::Approx(0.5).epsilon(1e-12));
  fs::remove(path);

  const fs::path bad = fs::temp_directory_path() / "qhj_test_bad.csv";
  {
    std::ofstream out(bad);
    out << "0,0\n1,abc\n2,0\n3,0\n";
  }
  CHECK_THROWS_AS(Potential::tabulated_from_csv(bad.string()), ConfigError);
  fs::remove(bad);
  CHECK_THROWS_AS(Potential::tabulated_from_csv("/nonexistent/file.csv"),
                  ConfigError);
}

TEST_CASE("free-particle basis: wave number, Wronskian, initial values") {
  const SolutionBasis b1 = SolutionBasis::analytic_free(kNatural, 0.5, 0.0);
  CHECK(b1.wronskian() == 1.0);  // k = sqrt(2 * 1 * 0.5) / 1
  CHECK(b1.phi1(0.0).v == 1.0);
  CHECK(b1.phi2(0.0).v == 0.0);
  CHECK(b1.phi2(0.0).d1 == 1.0);

  const SolutionBasis b2 = SolutionBasis::analytic_free(kNatural, 2.0, 0.0);
  CHECK(b2.wronskian() == 2.0);

  CHECK_THROWS_AS(SolutionBasis::analytic_free(kNatural, 0.0, 0.0),
                  DomainError);
  CHECK_THROWS_AS(SolutionBasis::analytic_free(kNatural, -1.0, 0.0),
                  DomainError);
}

TEST_CASE("numeric basis reproduces the analytic free pair") {
  const Potential free_pot = Potential::free_space();
  const SolutionBasis numeric =
      SolutionBasis::integrate(kNatural, free_pot, 0.5, {0.0, 10.0}, 1e-3);
  const SolutionBasis analytic =
      SolutionBasis::analytic_free(kNatural, 0.5, 0.0);
  const double k = analytic.wronskian();

  // the numeric pair carries W = 1; phi2 differs from sin by the factor k
  double worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double x = 10.0 * i / 500.0;
    worst = std::max(worst,
                     std::fabs(numeric.phi1(x).v - analytic.phi1(x).v));
    worst = std::max(worst,
                     std::fabs(k * numeric.phi2(x).v - analytic.phi2(x).v));
  }
  CHECK(worst <= 1e-7);

  // dense output off the node grid
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const double x = 10.0 * (rng() / 4294967296.0);
    CHECK(std::fabs(numeric.phi1(x).v - std::cos(x)) < 1e-10);
    CHECK(std::fabs(numeric.phi1(x).d1 + std::sin(x)) < 1e-9);
  }
}

TEST_CASE("numeric basis keeps the Wronskian constant on a harmonic well") {
  // anchored at the well center, the engine's working construction; sweeps
  // run outward so the two solutions carry correlated rounding and the
  // Wronskian survives the exponential growth toward the domain ends
  const Potential harm = Potential::harmonic(1.0);
  const SolutionBasis b =
      SolutionBasis::integrate(kNatural, harm, 0.5, {-6.0, 6.0}, 1e-3, 0.0);
  // drift measured against the local product scale: solutions reach ~1e7
  // deep in the forbidden region and the difference of ~1e14-sized
  // products carries irreducible representation noise
  double worst = 0.0;
  double worst_allowed = 0.0;
  for (double x : b.grid()) {
    const BasisPoint p1 = b.phi1(x);
    const BasisPoint p2 = b.phi2(x);
    const double drift = std::fabs(p1.v * p2.d1 - p2.v * p1.d1 - 1.0);
    const double scale =
        std::max({1.0, std::fabs(p1.v * p2.d1), std::fabs(p2.v * p1.d1)});
    worst = std::max(worst, drift / scale);
    if (std::fabs(x) < 0.95) worst_allowed = std::max(worst_allowed, drift);
  }
  CHECK(worst <= 1e-8);
  // in the oscillatory region the absolute drift itself stays tiny
  CHECK(worst_allowed <= 1e-10);
}

TEST_CASE("numeric basis edge cases") {
  const Potential harm = Potential::harmonic(1.0);

  // zero-length domain keeps the initial conditions exactly
  const SolutionBasis point =
      SolutionBasis::integrate(kNatural, harm, 0.5, {1.5, 1.5}, 1e-3, 1.5);
  CHECK(point.phi1(1.5).v == 1.0);
  CHECK(point.phi1(1.5).d1 == 0.0);
  CHECK(point.phi2(1.5).v == 0.0);
  CHECK(point.phi2(1.5).d1 == 1.0);
  CHECK_THROWS_AS(point.phi1(2.0), DomainError);

  // a step too coarse for the local wavelength is refused
  CHECK_THROWS_WITH_AS(SolutionBasis::integrate(kNatural, harm, 0.5,
                                                {-6.0, 6.0}, 0.1),
                       doctest::Contains("does not resolve"), DomainError);

  // anchor must sit inside the domain
  CHECK_THROWS_AS(SolutionBasis::integrate(kNatural, harm, 0.5, {0.0, 1.0},
                                           1e-3, 2.0),
                  DomainError);
}

TEST_CASE("interior anchor integrates both directions") {
  const Potential harm = Potential::harmonic(1.0);
  const SolutionBasis b =
      SolutionBasis::integrate(kNatural, harm, 0.5, {-2.0, 3.0}, 1e-3, 0.0);
  CHECK(b.anchor() == 0.0);
  CHECK(b.phi1(0.0).v == 1.0);
  CHECK(b.phi2(0.0).v == 0.0);
  const BasisPoint left = b.phi1(-1.7);
  const BasisPoint right = b.phi1(2.4);
  CHECK(std::isfinite(left.v));
  CHECK(std::isfinite(right.v));
  // Wronskian holds across both sweeps
  for (double x : {-1.9, -0.3, 0.7, 2.9}) {
    const BasisPoint p1 = b.phi1(x);
    const BasisPoint p2 = b.phi2(x);
    CHECK(std::fabs(p1.v * p2.d1 - p2.v * p1.d1 - 1.0) < 1e-9);
  }
}

TEST_CASE("node counting drives the unwrap across phi1 zeros") {
  const SolutionBasis b = SolutionBasis::analytic_free(kNatural, 0.5, 0.0);
  // k = 1: zeros of cos at pi/2 + j pi
  CHECK(b.node_count_from_anchor(0.3) == 0);
  CHECK(b.node_count_from_anchor(kPi) == 1);
  CHECK(b.node_count_from_anchor(4.0 * kPi) == 4);
  CHECK(b.node_count_from_anchor(-2.0) == -1);
  CHECK(b.node_count_from_anchor(kPi / 2.0) == 0);  // open interval

  const SolutionBasis num = SolutionBasis::integrate(
      kNatural, Potential::free_space(), 0.5, {-5.0, 15.0}, 1e-3, 0.0);
  for (double x : {0.3, kPi, 4.0 * kPi, -2.0})
    CHECK(num.node_count_from_anchor(x) == b.node_count_from_anchor(x));
}
