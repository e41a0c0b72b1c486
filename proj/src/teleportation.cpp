#include "xyzdm/teleportation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace xyzdm {

namespace {

const std::array<Matrix4c, 16>& pauli_pairs() {
  static const std::array<Matrix4c, 16> uu = [] {
    std::array<Matrix4c, 16> out;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) out[4 * m + n] = kron2(pauli(m), pauli(n));
    return out;
  }();
  return uu;
}

Matrix4c apply_channel(const std::array<double, 4>& q, const Matrix4c& rho_in) {
  const auto& uu = pauli_pairs();
  Matrix4c out = Matrix4c::Zero();
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      const Matrix4c& u = uu[4 * m + n];
      out += (q[m] * q[n]) * (u * rho_in * u);
    }
  }
  return out;
}

// Max-shifted hyperbolic ratios shared by the output spectrum and the
// average fidelity; every member stays bounded for all T > 0.
struct HyperRatios {
  double a;    // cosh(beta eta) / e^M
  double bb;   // e^{beta Jz} cosh(beta xi) / e^M
  double sq;   // sinh(beta eta) / e^M
  double sp2;  // e^{beta Jz} sinh(beta xi) / e^M
};

HyperRatios hyper_ratios(const ModelParams& p) {
  const double beta = 1.0 / p.T;
  const double s = beta * p.Jz / 2.0;
  const double pp = beta * xi(p);
  const double q = beta * eta(p);
  const double m = std::max(q, 2.0 * s + pp);
  HyperRatios r;
  r.a = 0.5 * (std::exp(q - m) + std::exp(-q - m));
  r.bb = 0.5 * (std::exp(2.0 * s + pp - m) + std::exp(2.0 * s - pp - m));
  r.sq = 0.5 * (std::exp(q - m) - std::exp(-q - m));
  r.sp2 = 0.5 * (std::exp(2.0 * s + pp - m) - std::exp(2.0 * s - pp - m));
  return r;
}

void require_thermal(const ModelParams& p) {
  validate_params(p);
  if (!(p.T > 0.0)) {
    throw std::invalid_argument("teleportation through the thermal channel requires T > 0");
  }
}

}  // namespace

void validate_input(const InputState& s) {
  if (!std::isfinite(s.theta) || !std::isfinite(s.phi)) {
    throw std::invalid_argument("input state angles must be finite");
  }
  if (s.theta < 0.0 || s.theta > std::numbers::pi) {
    throw std::invalid_argument("input polar angle must lie in [0, pi]");
  }
}

double input_concurrence(const InputState& s) {
  validate_input(s);
  return std::abs(std::sin(s.theta));
}

Matrix4c input_density(const InputState& s) {
  validate_input(s);
  const double half = s.theta / 2.0;
  Matrix4c rho = Matrix4c::Zero();
  rho(1, 1) = std::sin(half) * std::sin(half);
  rho(2, 2) = std::cos(half) * std::cos(half);
  rho(1, 2) = 0.5 * std::polar(1.0, -s.phi) * std::sin(s.theta);
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

std::array<double, 4> bell_probabilities(const Matrix4c& channel) {
  require_density(channel);
  std::array<double, 4> q;
  for (int mu = 0; mu < 4; ++mu) {
    const Vector4c& v = bell_state(mu);
    q[mu] = std::max(0.0, (v.adjoint() * channel * v).value().real());
  }
  return q;
}

Matrix4c teleport_density(const Matrix4c& channel, const Matrix4c& rho_in) {
  require_density(rho_in);
  return apply_channel(bell_probabilities(channel), rho_in);
}

XState output_closed_form(const ModelParams& p, const InputState& s) {
  validate_input(s);
  const XState ch = gibbs_closed_form(p);
  const double w = ch.w1 + ch.w2;
  const double m = ch.mu_plus + ch.mu_minus;
  const double r = ch.z.real();
  const double ct = std::cos(s.theta / 2.0), st = std::sin(s.theta / 2.0);
  const double sin_theta = std::sin(s.theta);

  XState out;
  out.mu_plus = out.mu_minus = w * m;
  out.nu = 4.0 * r * ch.nu * std::cos(s.phi) * sin_theta;
  out.w1 = w * w * st * st + m * m * ct * ct;
  out.w2 = m * m * st * st + w * w * ct * ct;
  out.z = 2.0 * std::polar(1.0, -s.phi) *
          (r * r + std::polar(1.0, 2.0 * s.phi) * ch.nu * ch.nu) * sin_theta;
  out.log_partition = 0.0;
  return out;
}

LambdaQuad output_lambdas_closed(const ModelParams& p, const InputState& s) {
  validate_input(s);
  require_thermal(p);
  const HyperRatios h = hyper_ratios(p);
  const double x = xi(p), e = eta(p);
  const double j_over_eta = e > 0.0 ? p.J * p.gamma / e : 0.0;
  const double j_over_xi = x > 0.0 ? p.J / x : 0.0;
  const double cin = std::sin(s.theta);
  const double den = (h.a + h.bb) * (h.a + h.bb);

  const double diff = h.a * h.a - h.bb * h.bb;
  const double t1 =
      std::sqrt(cin * cin * diff * diff + 4.0 * h.a * h.a * h.bb * h.bb) /
      (2.0 * den);
  const complexd mix =
      std::polar(j_over_eta * j_over_eta * h.sq * h.sq, 2.0 * s.phi) +
      complexd(j_over_xi * j_over_xi * h.sp2 * h.sp2, 0.0);
  const double t2 = std::abs(cin * mix) / (2.0 * den);

  const double core = h.a * h.bb / den;
  const double cross =
      cin * j_over_eta * j_over_xi * h.sq * h.sp2 * std::cos(s.phi) / den;

  LambdaQuad out;
  out.l1 = std::abs(t1 + t2);
  out.l2 = std::abs(t1 - t2);
  out.l3 = std::abs(core + cross);
  out.l4 = std::abs(core - cross);
  return out;
}

double output_concurrence_closed(const ModelParams& p, const InputState& s) {
  return output_lambdas_closed(p, s).concurrence();
}

double fidelity(const Matrix4c& rho_in, const Matrix4c& rho_out, double tol) {
  require_density(rho_in);
  require_density(rho_out);
  const double purity = (rho_in * rho_in).trace().real();
  if (std::abs(purity - 1.0) > tol) {
    throw std::invalid_argument("overlap fidelity is defined for pure inputs only");
  }
  return (rho_in * rho_out).trace().real();
}

double fidelity_angle_form(const ModelParams& p, const InputState& s) {
  const XState out = output_closed_form(p, s);
  const double half = s.theta / 2.0;
  return out.w1 * std::sin(half) * std::sin(half) +
         out.w2 * std::cos(half) * std::cos(half) +
         (out.z * std::polar(1.0, -s.phi)).real() * std::sin(s.theta);
}

FidelitySplit fidelity_split(const ModelParams& p, double phi) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("input state angles must be finite");
  }
  const XState ch = gibbs_closed_form(p);
  const double w = ch.w1 + ch.w2;
  const double r = ch.z.real();
  FidelitySplit split;
  split.classical = w * w;
  split.quantum =
      0.5 - w + 2.0 * (ch.nu * ch.nu * std::cos(2.0 * phi) + r * r);
  return split;
}

double fidelity_closed(const ModelParams& p, const InputState& s) {
  validate_input(s);
  const FidelitySplit split = fidelity_split(p, s.phi);
  const double cin = std::sin(s.theta);
  return split.classical + split.quantum * cin * cin;
}

double average_fidelity(const ModelParams& p) {
  require_thermal(p);
  const HyperRatios h = hyper_ratios(p);
  const double x = xi(p);
  const double j_over_xi = x > 0.0 ? p.J / x : 0.0;
  return (h.a * h.a + 2.0 * h.bb * h.bb +
          j_over_xi * j_over_xi * h.sp2 * h.sp2) /
         (3.0 * (h.a + h.bb) * (h.a + h.bb));
}

double average_fidelity_quadrature(const ModelParams& p) {
  using gauss64 = boost::math::quadrature::gauss<double, 64>;
  const std::array<double, 4> q = bell_probabilities(gibbs_numeric(p));
  auto over_phi = [&q](double theta) {
    auto f = [&q, theta](double phi) {
      const Matrix4c rin = input_density({theta, phi});
      return (rin * apply_channel(q, rin)).trace().real();
    };
    return gauss64::integrate(f, 0.0, 2.0 * std::numbers::pi) * std::sin(theta);
  };
  return gauss64::integrate(over_phi, 0.0, std::numbers::pi) /
         (4.0 * std::numbers::pi);
}

}  // namespace xyzdm
