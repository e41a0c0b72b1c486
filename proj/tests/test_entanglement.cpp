#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>
#include <Eigen/Dense>

#include "test_util.hpp"
#include "xyzdm/entanglement.hpp"
#include "xyzdm/model.hpp"
#include "xyzdm/thermal.hpp"

using namespace xyzdm;

namespace {

std::array<double, 4> sorted_quad(const LambdaQuad& q) {
  std::array<double, 4> v{q.l1, q.l2, q.l3, q.l4};
  std::sort(v.begin(), v.end());
  return v;
}

// Ground-state density built straight from the dense eigensolver, so the
// closed-form branch logic is not in the loop.
Matrix4c numeric_ground(const ModelParams& p) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(build_hamiltonian(p));
  const auto& evals = es.eigenvalues();
  const double window = 1e-9 * std::max(1.0, std::abs(evals(0)));
  Matrix4c rho = Matrix4c::Zero();
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    if (evals(i) - evals(0) <= window) {
      rho += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ++n;
    }
  }
  return rho / static_cast<double>(n);
}

}  // namespace

TEST_CASE("closed-form lambda quad matches the Wootters oracle") {
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = test::draw_params(rng);
    const auto closed = sorted_quad(thermal_lambdas(p));
    const auto oracle = wootters_lambdas(gibbs_numeric(p));
    for (int i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(closed[i] - oracle[3 - i]));
    }
    CHECK(thermal_concurrence(p) ==
          doctest::Approx(wootters_concurrence(gibbs_numeric(p))).epsilon(1e-9));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("lambda multiset is invariant under sign flips of J and gamma") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = test::draw_params(rng);
    const auto base = sorted_quad(thermal_lambdas(p));
    ModelParams q = p;
    q.J = -p.J;
    const auto flip_j = sorted_quad(thermal_lambdas(q));
    q = p;
    q.gamma = -p.gamma;
    const auto flip_g = sorted_quad(thermal_lambdas(q));
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(base[i] - flip_j[i]) < 1e-12);
      CHECK(std::abs(base[i] - flip_g[i]) < 1e-12);
    }
  }
}

TEST_CASE("entanglement of formation values and shape") {
  CHECK(entanglement_of_formation(0.0) == 0.0);
  CHECK(entanglement_of_formation(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entanglement_of_formation(0.25) ==
        doctest::Approx(0.1176188737709179).epsilon(1e-14));
  CHECK(entanglement_of_formation(0.5) ==
        doctest::Approx(0.35457890266526988).epsilon(1e-14));
  CHECK(entanglement_of_formation(0.53) ==
        doctest::Approx(0.38792992915310039).epsilon(1e-14));
  CHECK(entanglement_of_formation(0.75) ==
        doctest::Approx(0.65605756297271469).epsilon(1e-14));
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double e = entanglement_of_formation(i / 50.0);
    CHECK(e > prev);
    prev = e;
  }
  CHECK_THROWS_AS(entanglement_of_formation(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_of_formation(1.01), std::invalid_argument);
}

TEST_CASE("ground-state concurrence matches Wootters on the numeric ground state") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = test::draw_params(rng);
    if (spectral_data(p).ground_gap() < 1e-6) continue;  // branch boundary
    CHECK(ground_state_concurrence(p) ==
          doctest::Approx(wootters_concurrence(numeric_ground(p))).epsilon(1e-9));
  }
}

TEST_CASE("zero-temperature plateau value below the critical field") {
  ModelParams p{.J = 1.0, .gamma = 0.5, .Jz = -1.0, .D = 0.0, .B = 0.8, .b = 1.0};
  CHECK(ground_state_concurrence(p) ==
        doctest::Approx(0.5299989400031799).epsilon(1e-14));
  // The plateau is flat: the value cannot depend on b inside the window.
  p.b = 0.3;
  CHECK(ground_state_concurrence(p) ==
        doctest::Approx(0.5299989400031799).epsilon(1e-14));
}

TEST_CASE("ground-state concurrence at the level crossing") {
  ModelParams p{.J = 1.0, .gamma = 0.5, .Jz = -1.0, .D = 0.0, .B = 0.8, .b = 0.0};
  const auto bc = critical_b(p);
  REQUIRE(bc.has_value());
  CHECK(*bc == doctest::Approx(1.6663721752391696).epsilon(1e-14));
  p.b = *bc;
  const double outer = std::abs(p.J * p.gamma) / eta(p);
  const double central = std::hypot(p.J, p.Jz * p.D) / xi(p);
  CHECK(ground_state_concurrence(p) ==
        doctest::Approx(0.5 * std::abs(outer - central)).epsilon(1e-9));
  CHECK(ground_state_concurrence(p) ==
        doctest::Approx(wootters_concurrence(numeric_ground(p))).epsilon(1e-8));
}

TEST_CASE("critical anisotropy strength") {
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 0.0, .B = 4.0, .b = 2.5};
  const auto dc = critical_dm(p);
  REQUIRE(dc.has_value());
  CHECK(*dc == doctest::Approx(4.507223436207121).epsilon(1e-14));
  // At the crossing point the two ground candidates are degenerate.
  ModelParams q = p;
  q.D = *dc;
  CHECK(xi(q) == doctest::Approx(eta(q) - q.Jz).epsilon(1e-12));

  ModelParams flat = p;
  flat.Jz = 0.0;
  CHECK(!critical_dm(flat).has_value());
  ModelParams neg{.J = 1.0, .gamma = 0.0, .Jz = 0.5, .D = 0.0, .B = 0.0, .b = 0.0};
  CHECK(!critical_dm(neg).has_value());
}

TEST_CASE("critical field strength") {
  // No real crossing once the central gap outruns the outer one.
  ModelParams p{.J = 1.0, .gamma = 0.5, .Jz = -1.0, .D = 2.0, .B = 0.8, .b = 0.0};
  CHECK(!critical_b(p).has_value());
}

TEST_CASE("critical temperatures against pinned values") {
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 0.0, .B = 4.0, .b = 2.5};
  CriticalTempScan scan;

  auto [tc1, tc2] = critical_temperatures(p, scan);
  REQUIRE(tc1.has_value());
  REQUIRE(tc2.has_value());
  CHECK(*tc1 == doctest::Approx(0.5107).epsilon(2e-3));
  CHECK(*tc2 == doctest::Approx(1.7818).epsilon(2e-3));

  p.D = 2.0;
  std::tie(tc1, tc2) = critical_temperatures(p, scan);
  REQUIRE(tc1.has_value());
  REQUIRE(tc2.has_value());
  CHECK(*tc1 == doctest::Approx(0.3395).epsilon(2e-3));
  CHECK(*tc2 == doctest::Approx(2.2407).epsilon(2e-3));

  p.D = 5.0;
  std::tie(tc1, tc2) = critical_temperatures(p, scan);
  CHECK(!tc1.has_value());  // no low-temperature death past the crossing
  REQUIRE(tc2.has_value());
  CHECK(*tc2 == doctest::Approx(3.6281).epsilon(2e-3));
}

TEST_CASE("critical temperature scan rejects bad grids") {
  ModelParams p;
  CriticalTempScan scan;
  scan.points = 4;
  CHECK_THROWS_AS(critical_temperatures(p, scan), std::invalid_argument);
  scan.points = 400;
  scan.t_min = 0.0;
  CHECK_THROWS_AS(critical_temperatures(p, scan), std::invalid_argument);
}

TEST_CASE("phase-region classification") {
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 2.0, .B = 4.0, .b = 2.5};
  p.T = 0.05;
  CHECK(classify_region(p) == Region::MainLowT);
  p.T = 3.0;
  CHECK(classify_region(p) == Region::Separable);
  // Somewhere between the two critical temperatures the entanglement
  // reappears with the central pair of invariants on top.
  auto [tc1, tc2] = critical_temperatures(p, CriticalTempScan{});
  REQUIRE(tc1.has_value());
  REQUIRE(tc2.has_value());
  bool saw_revival = false;
  for (int i = 1; i < 64 && !saw_revival; ++i) {
    p.T = *tc1 + (*tc2 - *tc1) * i / 64.0;
    saw_revival = classify_region(p) == Region::Revival;
  }
  CHECK(saw_revival);

  p.D = 6.0;  // beyond the critical point
  p.T = 0.1;
  CHECK(classify_region(p) == Region::HighDm);

  CHECK(region_name(Region::Separable) == std::string("separable"));
  CHECK(region_name(Region::MainLowT) == std::string("main_low_t"));
  CHECK(region_name(Region::Revival) == std::string("revival"));
  CHECK(region_name(Region::HighDm) == std::string("high_dm"));
}
