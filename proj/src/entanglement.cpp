#include "xyzdm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace xyzdm {

double LambdaQuad::max() const { return std::max({l1, l2, l3, l4}); }

double LambdaQuad::sum() const { return l1 + l2 + l3 + l4; }

double LambdaQuad::central_max() const { return std::max(l1, l2); }

double LambdaQuad::outer_max() const { return std::max(l3, l4); }

double LambdaQuad::concurrence() const {
  return std::max(0.0, 2.0 * max() - sum());
}

LambdaQuad xstate_lambdas(const XState& s) {
  const double root_c = std::sqrt(std::max(0.0, s.w1 * s.w2));
  const double root_o = std::sqrt(std::max(0.0, s.mu_plus * s.mu_minus));
  const double az = std::abs(s.z);
  LambdaQuad out;
  out.l1 = root_c + az;
  out.l2 = std::abs(root_c - az);
  out.l3 = std::abs(root_o + s.nu);
  out.l4 = std::abs(root_o - s.nu);
  return out;
}

LambdaQuad thermal_lambdas(const ModelParams& p) {
  return xstate_lambdas(gibbs_closed_form(p));
}

double thermal_concurrence(const ModelParams& p) {
  return thermal_lambdas(p).concurrence();
}

std::array<double, 4> wootters_lambdas(const Matrix4c& rho) {
  require_density(rho);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
  Eigen::Vector4d w = es.eigenvalues();
  for (int i = 0; i < 4; ++i) w[i] = std::sqrt(std::max(0.0, w[i]));
  const Matrix4c root =
      es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix4c flip = kron2(pauli(2), pauli(2));
  // Singular values of sqrt(rho) (sy x sy) conj(sqrt(rho)) equal the usual
  // sqrt-eigenvalues of rho rho~ but avoid the sqrt amplification of
  // near-zero eigenvalue noise.
  const Matrix4c m = root * flip * root.conjugate();
  Eigen::JacobiSVD<Matrix4c> svd(m);
  std::array<double, 4> lam;
  for (int i = 0; i < 4; ++i) lam[i] = svd.singularValues()[i];
  return lam;
}

double wootters_concurrence(const Matrix4c& rho) {
  const auto lam = wootters_lambdas(rho);
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double entanglement_of_formation(double concurrence) {
  if (!(concurrence >= -1e-12 && concurrence <= 1.0 + 1e-12)) {
    throw std::invalid_argument("concurrence must lie in [0, 1]");
  }
  const double c = std::clamp(concurrence, 0.0, 1.0);
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double ground_state_concurrence(const ModelParams& p, double tol) {
  validate_params(p);
  const double x = xi(p), e = eta(p);
  const double outer_c = e > 0.0 ? std::abs(p.J * p.gamma) / e : 0.0;
  const double central_c =
      x > 0.0 ? std::sqrt(p.J * p.J + p.Jz * p.D * p.Jz * p.D) / x : 0.0;
  const double split = x - (e - p.Jz);  // sign of central-vs-outer ground level
  const double central_energy = -p.Jz / 2.0 - x;
  if (std::abs(split) <= tol * std::max(1.0, std::abs(central_energy))) {
    return 0.5 * std::abs(outer_c - central_c);
  }
  return split < 0.0 ? outer_c : central_c;
}

std::optional<double> critical_dm(const ModelParams& p) {
  validate_params(p);
  if (p.Jz == 0.0) return std::nullopt;
  const double gap = eta(p) - p.Jz;
  const double radicand = gap * gap - (p.b * p.b + p.J * p.J);
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand) / std::abs(p.Jz);
}

std::optional<double> critical_b(const ModelParams& p) {
  validate_params(p);
  const double gap = eta(p) - p.Jz;
  const double jzd = p.Jz * p.D;
  const double radicand = gap * gap - (jzd * jzd + p.J * p.J);
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

namespace {

struct TempEvent {
  double t;
  bool death;  // true: entangled -> separable, false: the reverse
};

}  // namespace

std::pair<std::optional<double>, std::optional<double>> critical_temperatures(
    const ModelParams& p, const CriticalTempScan& scan) {
  validate_params(p);
  if (scan.points < 8) {
    throw std::invalid_argument("temperature scan needs at least 8 points");
  }
  if (!(scan.t_min > 0.0)) {
    throw std::invalid_argument("temperature scan requires t_min > 0");
  }
  const double t_max =
      scan.t_max > scan.t_min
          ? scan.t_max
          : 5.0 * std::max({1.0, std::abs(p.Jz), eta(p), xi(p)});

  auto quad = [&p](double t) {
    ModelParams q = p;
    q.T = t;
    return thermal_lambdas(q);
  };
  auto f = [&quad](double t) {  // > 0 exactly when entangled
    const LambdaQuad l = quad(t);
    return 2.0 * l.max() - l.sum();
  };
  auto g = [&quad](double t) {  // > 0 when the outer block dominates
    const LambdaQuad l = quad(t);
    return l.outer_max() - l.central_max();
  };

  const int n = scan.points;
  std::vector<double> ts(n), fs(n), gs(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = scan.t_min + (t_max - scan.t_min) * i / (n - 1);
    const LambdaQuad l = quad(ts[i]);
    fs[i] = 2.0 * l.max() - l.sum();
    gs[i] = l.outer_max() - l.central_max();
  }

  auto bisect = [&scan](double lo, double hi, auto&& fn, bool lo_positive) {
    while (hi - lo > scan.bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      if ((fn(mid) > 0.0) == lo_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::vector<TempEvent> events;
  for (int i = 0; i + 1 < n; ++i) {
    const bool pos_l = fs[i] > 0.0, pos_r = fs[i + 1] > 0.0;
    if (pos_l != pos_r) {
      events.push_back({bisect(ts[i], ts[i + 1], f, pos_l), pos_l});
      continue;
    }
    // Dominant-block crossing with entanglement on both flanks: concurrence
    // touches zero in between, usually inside a zone far below grid (or even
    // bisection) resolution. Count it as a death/revival pair either way and
    // widen to the true zone edges when they are resolvable.
    if (pos_l && (gs[i] > 0.0) != (gs[i + 1] > 0.0)) {
      const double t_cross = bisect(ts[i], ts[i + 1], g, gs[i] > 0.0);
      if (f(t_cross) < 0.0) {
        events.push_back({bisect(ts[i], t_cross, f, true), true});
        events.push_back({bisect(t_cross, ts[i + 1], f, false), false});
      } else {
        events.push_back({t_cross, true});
        events.push_back({t_cross, false});
      }
    }
  }

  std::optional<double> tc1, tc2;
  for (const auto& ev : events) {
    if (!ev.death) continue;
    const bool revived = std::any_of(events.begin(), events.end(),
                                     [&ev](const TempEvent& later) {
                                       return !later.death && later.t >= ev.t;
                                     });
    if (revived) {
      tc1 = ev.t;
      break;
    }
  }
  if (!events.empty() && fs[n - 1] <= 0.0) {
    for (auto it = events.rbegin(); it != events.rend(); ++it) {
      if (it->death) {
        tc2 = it->t;
        break;
      }
    }
  }
  return {tc1, tc2};
}

const char* region_name(Region r) {
  switch (r) {
    case Region::Separable: return "separable";
    case Region::MainLowT: return "main_low_t";
    case Region::Revival: return "revival";
    case Region::HighDm: return "high_dm";
  }
  throw std::invalid_argument("unknown region");
}

Region classify_region(const ModelParams& p) {
  const LambdaQuad l = thermal_lambdas(p);
  if (l.concurrence() <= 0.0) return Region::Separable;
  const auto dc = critical_dm(p);
  if (!dc.has_value() || p.D >= *dc) return Region::HighDm;
  return l.central_max() > l.outer_max() ? Region::Revival : Region::MainLowT;
}

}  // namespace xyzdm
