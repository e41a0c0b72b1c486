#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "test_util.hpp"
#include "xyzdm/entanglement.hpp"
#include "xyzdm/model.hpp"
#include "xyzdm/teleportation.hpp"
#include "xyzdm/thermal.hpp"

using namespace xyzdm;

namespace {

constexpr double kPi = std::numbers::pi;

double overlap(const Matrix4c& a, const Matrix4c& b) {
  return (a * b).trace().real();
}

}  // namespace

TEST_CASE("input states are pure with concurrence sin(theta)") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    const InputState s = test::draw_input(rng);
    const Matrix4c rho = input_density(s);
    require_density(rho);
    CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(input_concurrence(s) == doctest::Approx(std::sin(s.theta)).epsilon(1e-15));
    CHECK(wootters_concurrence(rho) ==
          doctest::Approx(std::abs(std::sin(s.theta))).epsilon(1e-7));
  }
  CHECK_THROWS_AS(validate_input(InputState{-0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_input(InputState{3.2, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_input(InputState{1.0, std::nan("")}),
                  std::invalid_argument);
}

TEST_CASE("singlet resource teleports perfectly") {
  const Matrix4c channel = bell_state(0) * bell_state(0).adjoint();
  const auto q = bell_probabilities(channel);
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(q[i]) < 1e-14);

  std::mt19937_64 rng(42);
  for (int k = 0; k < 20; ++k) {
    const InputState s = test::draw_input(rng);
    const Matrix4c rin = input_density(s);
    const Matrix4c rout = teleport_density(channel, rin);
    CHECK((rout - rin).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fidelity(rin, rout) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fully mixed resource erases the input") {
  const Matrix4c channel = Matrix4c::Identity() * 0.25;
  const auto q = bell_probabilities(channel);
  for (double qi : q) CHECK(qi == doctest::Approx(0.25).epsilon(1e-14));

  const InputState s{0.9, 1.7};
  const Matrix4c rout = teleport_density(channel, input_density(s));
  CHECK((rout - channel).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(fidelity(input_density(s), rout) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("bell probabilities are a distribution") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = test::draw_params(rng);
    const auto q = bell_probabilities(xstate_to_matrix(gibbs_closed_form(p)));
    double sum = 0.0;
    for (double qi : q) {
      CHECK(qi >= -1e-14);
      sum += qi;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("teleportation map is linear in the input") {
  std::mt19937_64 rng(44);
  const ModelParams p = test::draw_params(rng);
  const Matrix4c channel = xstate_to_matrix(gibbs_closed_form(p));
  const Matrix4c r1 = input_density(test::draw_input(rng));
  const Matrix4c r2 = input_density(test::draw_input(rng));
  const double a = 0.37;
  const Matrix4c mixed = a * r1 + (1.0 - a) * r2;
  const Matrix4c lhs = teleport_density(channel, mixed);
  const Matrix4c rhs = a * teleport_density(channel, r1) +
                       (1.0 - a) * teleport_density(channel, r2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("closed-form output matches the sixteen-term sum") {
  std::mt19937_64 rng(45);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = test::draw_params(rng);
    const InputState s = test::draw_input(rng);
    const Matrix4c direct =
        teleport_density(xstate_to_matrix(gibbs_closed_form(p)), input_density(s));
    const Matrix4c closed = xstate_to_matrix(output_closed_form(p, s));
    worst = std::max(worst, (direct - closed).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("closed-form output spectrum matches the Wootters oracle") {
  std::mt19937_64 rng(46);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = test::draw_params(rng);
    const InputState s = test::draw_input(rng);
    const Matrix4c direct =
        teleport_density(xstate_to_matrix(gibbs_closed_form(p)), input_density(s));
    const auto oracle = wootters_lambdas(direct);  // descending
    const LambdaQuad closed = output_lambdas_closed(p, s);
    std::array<double, 4> c{closed.l1, closed.l2, closed.l3, closed.l4};
    std::sort(c.begin(), c.end(), std::greater<>());
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(c[i] - oracle[i]));
    CHECK(output_concurrence_closed(p, s) ==
          doctest::Approx(wootters_concurrence(direct)).epsilon(1e-9));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("closed-form fidelity equals the overlap at every phase") {
  std::mt19937_64 rng(47);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = test::draw_params(rng);
    const InputState s = test::draw_input(rng);
    const Matrix4c rin = input_density(s);
    const Matrix4c rout =
        teleport_density(xstate_to_matrix(gibbs_closed_form(p)), rin);
    worst = std::max(worst, std::abs(fidelity_closed(p, s) - overlap(rin, rout)));

    const FidelitySplit split = fidelity_split(p, s.phi);
    const double c_in = input_concurrence(s);
    worst = std::max(worst, std::abs(split.classical + split.quantum * c_in * c_in -
                                     overlap(rin, rout)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("angle form of the fidelity holds only at zero phase") {
  std::mt19937_64 rng(48);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = test::draw_params(rng);
    InputState s = test::draw_input(rng);
    s.phi = 0.0;
    const Matrix4c rin = input_density(s);
    const Matrix4c rout =
        teleport_density(xstate_to_matrix(gibbs_closed_form(p)), rin);
    worst = std::max(worst, std::abs(fidelity_angle_form(p, s) - overlap(rin, rout)));
  }
  CHECK(worst < 1e-12);

  // Away from phi = 0 the literal form departs from the overlap.
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = -1.0, .D = 1.0, .B = 1.0, .b = 0.5};
  p.T = 0.1;
  const InputState s{kPi / 2, kPi / 2};
  const Matrix4c rin = input_density(s);
  const Matrix4c rout =
      teleport_density(xstate_to_matrix(gibbs_closed_form(p)), rin);
  CHECK(std::abs(fidelity_angle_form(p, s) - overlap(rin, rout)) > 1e-6);
  CHECK(std::abs(fidelity_closed(p, s) - overlap(rin, rout)) < 1e-12);
}

TEST_CASE("fidelity requires a pure input") {
  const Matrix4c mixed = Matrix4c::Identity() * 0.25;
  CHECK_THROWS_AS(fidelity(mixed, mixed), std::invalid_argument);
}

TEST_CASE("average fidelity matches the quadrature oracle") {
  std::mt19937_64 rng(49);
  for (int k = 0; k < 5; ++k) {
    const ModelParams p = test::draw_params(rng);
    CHECK(average_fidelity(p) ==
          doctest::Approx(average_fidelity_quadrature(p)).epsilon(1e-9));
  }
}

TEST_CASE("average fidelity limits") {
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 2.0, .B = 4.0, .b = 2.5};
  p.T = 1e6;
  CHECK(average_fidelity(p) == doctest::Approx(0.25).epsilon(1e-5));

  // Strong anisotropy pushes the channel toward a clean singlet resource.
  ModelParams q{.J = 1.0, .gamma = 0.3, .Jz = -1.0, .D = 50.0, .B = 1.0, .b = 0.5};
  q.T = 0.1;
  CHECK(average_fidelity(q) == doctest::Approx(2.0 / 3.0).epsilon(0.01));
  CHECK(average_fidelity(q) == doctest::Approx(0.66680).epsilon(1e-4));
}

TEST_CASE("quantum gain never lifts unit-input fidelity past the classical cap") {
  // Observed on this parameter sheet: whenever the quantum coefficient is
  // positive, the fidelity at C_in = 1 stays at or below 2/3.
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = 0.0, .D = 0.0, .B = 1.0, .b = 0.5};
  p.T = 0.1;
  int violations = 0;
  for (int i = 0; i < 41; ++i) {
    p.Jz = -1.0 + 2.0 * i / 40.0;
    for (int j = 0; j < 61; ++j) {
      p.D = 6.0 * j / 60.0;
      const FidelitySplit split = fidelity_split(p, 0.0);
      if (split.quantum > 0.0 && split.classical + split.quantum > 2.0 / 3.0 + 1e-12) {
        ++violations;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("output entanglement switches on past a coupling threshold") {
  ModelParams p{.J = 1.0, .gamma = 0.3, .Jz = -1.0, .D = 0.0, .B = 1.0, .b = 0.5};
  const InputState s{kPi / 2, 0.0};

  p.T = 0.3;
  for (double d : {0.0, 0.5, 1.0, 2.0}) {
    p.D = d;
    CHECK(output_concurrence_closed(p, s) == 0.0);
  }
  for (double d : {3.0, 4.0, 6.0}) {
    p.D = d;
    CHECK(output_concurrence_closed(p, s) > 0.0);
  }

  // Colder channel: entangled output at weak coupling, a dead window, then
  // the same revival at strong coupling.
  p.T = 0.1;
  p.D = 0.0;
  CHECK(output_concurrence_closed(p, s) > 0.0);
  p.D = 1.8;
  CHECK(output_concurrence_closed(p, s) == 0.0);
  p.D = 3.0;
  CHECK(output_concurrence_closed(p, s) > 0.0);
}
