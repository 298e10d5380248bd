#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qhj/identities.hpp"
#include "qhj/transform.hpp"

using namespace qhj;
namespace {
constexpr double kPi = std::numbers::pi;
const PhysicalConstants kNatural{};

Microstate free_state(double E, double a, double b, double x0 = 0.0) {
  Microstate ms;
  ms.E = E;
  ms.a = a;
  ms.b = b;
  ms.x0 = x0;
  return ms;
}
}  // namespace

TEST_CASE("region classification") {
  const Potential free_pot = Potential::free_space();
  CHECK(classify_region(free_pot, 0.5, 123.0) == Region::allowed);

  const Potential harm = Potential::harmonic(1.0);
  CHECK(classify_region(harm, 0.5, 2.0) == Region::forbidden);
  CHECK(classify_region(harm, 0.5, 1.0) == Region::turning);
  CHECK(classify_region(harm, 0.5, 0.3) == Region::allowed);
  // the turning band scales with eps_turn
  CHECK(classify_region(harm, 0.5, 1.0 + 1e-12) == Region::turning);
  CHECK(classify_region(harm, 0.5, 1.0 + 1e-3, 1e-2) == Region::turning);
}

TEST_CASE("quantum transform is the identity shift for the classical state") {
  const Potential pot = Potential::free_space();
  const ReducedAction ra =
      make_free_reduced_action(kNatural, free_state(0.5, 1.0, 0.0));
  for (double x : {-3.0, 0.25, 4.7, 9.0})
    CHECK(std::fabs(quantum_transform(ra, pot, 1.0, x) - (x - 1.0)) <= 1e-10);
}

TEST_CASE("transform advances one full period over one envelope period") {
  const Potential pot = Potential::free_space();
  const ReducedAction ra =
      make_free_reduced_action(kNatural, free_state(0.5, 2.0, 0.0));
  // k = 1: the momentum is periodic with mean sqrt(2mE), so x_hat gains
  // exactly 2 pi / k across a period
  const double period = 2.0 * kPi;
  const double gained = quantum_transform(ra, pot, 0.0, period);
  CHECK(std::fabs(gained - period) <= 1e-8);
  // and is strictly monotone inside the period
  double prev = 0.0;
  for (int i = 1; i <= 16; ++i) {
    const double cur = quantum_transform(ra, pot, 0.0, period * i / 16.0);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("transform refuses paths that touch non-allowed regions") {
  const Potential harm = Potential::harmonic(1.0);
  Microstate ms = free_state(0.5, 1.0, 0.0);
  const ReducedAction ra =
      make_numeric_reduced_action(kNatural, harm, ms, {-2.0, 2.0}, 1e-3);

  CHECK_THROWS_WITH_AS(quantum_transform(ra, harm, 0.0, 2.0),
                       doctest::Contains("x = 1"), ForbiddenRegionError);
  CHECK_THROWS_AS(quantum_transform(ra, harm, 1.5, 1.8),
                  ForbiddenRegionError);
  // interior path well inside the allowed component is fine
  CHECK(std::isfinite(quantum_transform(ra, harm, -0.5, 0.5)));
}

TEST_CASE("tightening the quadrature tolerance barely moves the transform") {
  const Potential pot = Potential::free_space();
  const ReducedAction ra =
      make_free_reduced_action(kNatural, free_state(0.5, 2.0, 0.5));
  const double coarse = quantum_transform(ra, pot, 0.0, 5.0, 1e-8);
  const double fine = quantum_transform(ra, pot, 0.0, 5.0, 1e-9);
  CHECK(std::fabs(coarse - fine) <= 1e-9);
}

TEST_CASE("transform table labels regions and anchors components") {
  const Potential harm = Potential::harmonic(1.0);
  Microstate ms = free_state(0.5, 1.0, 0.0);
  const ReducedAction ra =
      make_numeric_reduced_action(kNatural, harm, ms, {-0.9, 2.0}, 1e-3);
  const TransformTable table =
      transform_table(ra, harm, {-0.9, 2.0}, 30, 0.0);
  REQUIRE(table.rows.size() == 30);
  bool saw_allowed = false, saw_forbidden = false;
  double prev_hat = -1e300;
  for (const auto& row : table.rows) {
    if (row.region == Region::allowed) {
      saw_allowed = true;
      REQUIRE(row.x_hat.has_value());
      CHECK(*row.x_hat > prev_hat);  // monotone within the component
      prev_hat = *row.x_hat;
    } else {
      saw_forbidden = saw_forbidden || row.region == Region::forbidden;
      CHECK_FALSE(row.x_hat.has_value());
    }
  }
  CHECK(saw_allowed);
  CHECK(saw_forbidden);
}

TEST_CASE("legendre dual residuals collapse onto the Jacobi identity") {
  const ReducedAction classical =
      make_free_reduced_action(kNatural, free_state(0.5, 1.0, 0.0));
  for (double x : {0.7, 3.1, 8.8}) {
    const IdentityReport r = legendre_dual_check(classical, x, 1e-6);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].residual <= 1e-12);
    CHECK(r.entries[1].residual <= 1e-12);
    CHECK(r.overall);
  }

  const ReducedAction mixed =
      make_free_reduced_action(kNatural, free_state(0.5, 2.0, 0.5));
  const IdentityReport r = legendre_dual_check(mixed, 1.3, 1e-6);
  CHECK(r.entries[0].residual <= 1e-6);
  CHECK(r.entries[1].residual <= 1e-6);

  // everything anchored vanishes at the anchor itself
  const IdentityReport at_anchor = legendre_dual_check(mixed, 0.0, 1e-6);
  CHECK(at_anchor.entries[0].residual == 0.0);
  CHECK(at_anchor.entries[1].residual == 0.0);
}

TEST_CASE("lagrangian rate: two routes and the classical value") {
  const Potential pot = Potential::free_space();
  const ReducedAction classical =
      make_free_reduced_action(kNatural, free_state(0.5, 1.0, 0.0));
  const LagrangianRate r = lagrangian_rate(classical, pot, 2.0);
  REQUIRE(r.defined);
  // kinetic-only: dS0/dx * v - E = 1 * 1 - 0.5 = E for E = 0.5
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));

  const ReducedAction mixed =
      make_free_reduced_action(kNatural, free_state(0.5, 2.0, 0.5));
  for (double x : {0.4, 1.6, 3.9}) {
    const LagrangianRate display = lagrangian_rate(mixed, pot, x);
    const LagrangianRate energy = lagrangian_rate_energy_route(mixed, x);
    REQUIRE(display.defined);
    REQUIRE(energy.defined);
    CHECK(std::fabs(display.value - energy.value) <= 1e-8);
  }

  // positions inside a singular bracket are flagged undefined
  const ReducedAction sing =
      make_free_reduced_action(kNatural, free_state(0.5, 2.0, 0.0));
  const SingularitySet set =
      find_singularities(sing, {10.0 * kPi, 12.0 * kPi});
  REQUIRE(!set.roots.empty());
  const LagrangianRate at_pole =
      lagrangian_rate(sing, pot, set.roots.front().x_star, &set);
  CHECK_FALSE(at_pole.defined);
}

TEST_CASE("identity report aggregates entry passes") {
  IdentityReport r;
  r.add("ok", 1e-9, 1e-6);
  CHECK(r.overall);
  r.add("bad", 1.0, 1e-6);
  CHECK_FALSE(r.overall);
  CHECK(r.entries[0].pass);
  CHECK_FALSE(r.entries[1].pass);
}

TEST_CASE("check suite passes on healthy actions and fails on corruption") {
  const Potential pot = Potential::free_space();
  const Microstate ms = free_state(0.5, 2.0, 0.5);
  const ReducedAction ra = make_free_reduced_action(kNatural, ms);
  const IdentityReport healthy =
      run_check_suite(ra, pot, {0.0, 6.0}, 64, CheckOptions{});
  CHECK(healthy.overall);

  SolutionBasis corrupted =
      SolutionBasis::analytic_free(kNatural, ms.E, ms.x0)
          .with_scaled_wronskian(1.01);
  auto rebuild = [](double E) {
    return SolutionBasis::analytic_free(PhysicalConstants{}, E, 0.0)
        .with_scaled_wronskian(1.01);
  };
  const ReducedAction bad(std::move(corrupted), ms, kNatural, rebuild, 0.0);
  const IdentityReport report =
      run_check_suite(bad, pot, {0.0, 6.0}, 64, CheckOptions{});
  CHECK_FALSE(report.overall);
  bool qshje_failed = false;
  for (const auto& e : report.entries)
    if (e.name == "qshje_residual") qshje_failed = !e.pass;
  CHECK(qshje_failed);
}
