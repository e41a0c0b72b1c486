#pragma once

#include <array>
#include <optional>
#include <utility>

#include "xyzdm/model.hpp"
#include "xyzdm/thermal.hpp"

namespace xyzdm {

// Square-rooted eigenvalues of rho rho~ for an X state, kept grouped by
// block: l1, l2 carry the central populations and coherence, l3, l4 the
// outer ones. The multiset is what concurrence sees; the grouping is what
// the phase-structure analysis sees.
struct LambdaQuad {
  double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;

  double max() const;
  double sum() const;
  double central_max() const;  // max(l1, l2)
  double outer_max() const;    // max(l3, l4)
  double concurrence() const;  // max(0, 2 max - sum)
};

// Closed form for any X state:
//   l1 = sqrt(w1 w2) + |z|,  l2 = |sqrt(w1 w2) - |z||,
//   l3 = |sqrt(mu+ mu-) + nu|,  l4 = |sqrt(mu+ mu-) - nu|.
LambdaQuad xstate_lambdas(const XState& s);

LambdaQuad thermal_lambdas(const ModelParams& p);

double thermal_concurrence(const ModelParams& p);

// Generic Wootters oracle for an arbitrary two-qubit density matrix:
// singular values of sqrt(rho) (sy x sy) conj(sqrt(rho)), descending.
// Deliberately independent of the X-structure shortcuts above.
std::array<double, 4> wootters_lambdas(const Matrix4c& rho);

double wootters_concurrence(const Matrix4c& rho);

// Binary entropy of (1 + sqrt(1 - C^2))/2; requires C in [0, 1].
double entanglement_of_formation(double concurrence);

// T -> 0 concurrence by ground-level block:
//   outer ground (xi < eta - Jz):    |J gamma| / eta
//   central ground (xi > eta - Jz):  sqrt(J^2 + (Jz D)^2) / xi
//   level crossing:                  half the absolute difference of the two,
//                                    the value of the equal ground mixture.
// tol sets the crossing window relative to the central ground energy.
double ground_state_concurrence(const ModelParams& p, double tol = 1e-9);

// Ground-level crossing in D with the other couplings held fixed:
// sqrt((eta - Jz)^2 - b^2 - J^2) / |Jz|. Empty when Jz = 0 or the crossing
// is not real. p.D itself is ignored.
std::optional<double> critical_dm(const ModelParams& p);

// Crossing in b: sqrt((eta - Jz)^2 - (Jz D)^2 - J^2). Empty when not real.
// p.b itself is ignored.
std::optional<double> critical_b(const ModelParams& p);

struct CriticalTempScan {
  double t_min = 1e-3;
  double t_max = 0.0;  // <= 0 selects 5 max(1, |Jz|, eta, xi)
  int points = 400;
  double bisect_tol = 1e-6;
};

// Zeros of the thermal concurrence along T. Returns {T_c1, T_c2} where T_c1
// is the lowest death temperature that is followed by a revival and T_c2 the
// final death above which C stays zero through the end of the scan; either
// may be absent. Death points are located two ways: sign changes of
// 2 max l - sum l, and crossings of the dominant block. At a block crossing
// C vanishes exactly but the surrounding dead zone can be far narrower than
// any grid step, so the crossing itself is bisected and counted as a
// death/revival pair, with the zone edges refined only when they are wide
// enough to register in floating point.
std::pair<std::optional<double>, std::optional<double>> critical_temperatures(
    const ModelParams& p, const CriticalTempScan& scan = {});

enum class Region {
  Separable = 0,  // C = 0, including points inside dead zones
  MainLowT = 1,   // entangled below the block crossing, D below the crossing value
  Revival = 2,    // entangled above the block crossing, D below the crossing value
  HighDm = 3,     // entangled with D at or beyond the crossing value (or none exists)
};

const char* region_name(Region r);

// Classifies (T, D) points of the thermal phase structure. Ties between the
// block maxima count as the outer block, so the revival label starts strictly
// above the crossing temperature.
Region classify_region(const ModelParams& p);

}  // namespace xyzdm
