#include "xyzdm/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "xyzdm/entanglement.hpp"

namespace xyzdm {

namespace {

constexpr std::array<const char*, 9> kAxisNames = {
    "J", "gamma", "Jz", "D", "B", "b", "T", "theta", "phi"};

bool is_axis_name(const std::string& name) {
  return std::find(kAxisNames.begin(), kAxisNames.end(), name) !=
         kAxisNames.end();
}

void apply_axis(const std::string& name, double v, ModelParams& p,
                InputState& in) {
  if (name == "J") p.J = v;
  else if (name == "gamma") p.gamma = v;
  else if (name == "Jz") p.Jz = v;
  else if (name == "D") p.D = v;
  else if (name == "B") p.B = v;
  else if (name == "b") p.b = v;
  else if (name == "T") p.T = v;
  else if (name == "theta") in.theta = v;
  else if (name == "phi") in.phi = v;
  else throw std::invalid_argument("unknown axis name: " + name);
}

double evaluate(const std::string& q, const ModelParams& p,
                const InputState& in) {
  if (q == "C_thermal" || q == "C_channel") return thermal_concurrence(p);
  if (q == "C_ground") return ground_state_concurrence(p);
  if (q == "C_out") return output_concurrence_closed(p, in);
  if (q == "F") return fidelity_closed(p, in);
  if (q == "F_A") return average_fidelity(p);
  if (q == "region") return static_cast<double>(classify_region(p));
  throw std::invalid_argument("unknown quantity: " + q);
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double hi = *mid;
  if (n % 2 == 1) return hi;
  std::nth_element(v.begin(), mid - 1, v.end());
  return 0.5 * (*(mid - 1) + hi);
}

// Flags steps larger than ten times the median nonzero step of the slice.
// Exact plateaus contribute no nonzero steps, so the threshold tracks the
// smooth part of the curve instead of collapsing to zero.
void detect_slices(SweepResult& r) {
  const auto& axes = r.spec.axes;
  const std::size_t n_axes = axes.size();
  const std::size_t n1 = n_axes == 2 ? r.shape[1] : 1;
  for (std::size_t qi = 0; qi < r.spec.quantities.size(); ++qi) {
    const std::string& qname = r.spec.quantities[qi];
    if (qname == "region") continue;
    const auto& col = r.columns[qi];
    for (std::size_t a = 0; a < n_axes; ++a) {
      const std::size_t len = r.shape[a];
      if (len < 8) continue;
      const std::size_t n_other = n_axes == 2 ? r.shape[1 - a] : 1;
      for (std::size_t j = 0; j < n_other; ++j) {
        auto at = [&](std::size_t i) {
          if (n_axes == 1) return col[i];
          return a == 0 ? col[i * n1 + j] : col[j * n1 + i];
        };
        std::vector<double> deltas(len - 1);
        std::vector<double> nonzero;
        for (std::size_t i = 0; i + 1 < len; ++i) {
          deltas[i] = std::abs(at(i + 1) - at(i));
          if (deltas[i] > 0.0) nonzero.push_back(deltas[i]);
        }
        if (nonzero.size() < 4) continue;
        const double threshold = 10.0 * median_of(std::move(nonzero));
        if (!(threshold > 0.0)) continue;
        for (std::size_t i = 0; i + 1 < len; ++i) {
          if (deltas[i] > threshold) {
            Transition t;
            t.quantity = qname;
            t.axis = axes[a].name;
            t.left = axes[a].values[i];
            t.right = axes[a].values[i + 1];
            if (n_axes == 2) {
              t.other_axis = axes[1 - a].name;
              t.other_value = axes[1 - a].values[j];
            }
            t.delta = deltas[i];
            r.transitions.push_back(std::move(t));
          }
        }
      }
    }
  }
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string axis_echo(const AxisSpec& ax) {
  if (ax.uniform) {
    return ax.name + ":" + format_double(ax.start) + ":" +
           format_double(ax.stop) + ":" + std::to_string(ax.values.size());
  }
  std::string out = ax.name + ":{";
  for (std::size_t i = 0; i < ax.values.size(); ++i) {
    if (i) out += ',';
    out += format_double(ax.values[i]);
  }
  return out + "}";
}

}  // namespace

AxisSpec AxisSpec::uniform_axis(std::string name, double start, double stop,
                                int steps) {
  if (steps < 2) throw std::invalid_argument("axis needs at least 2 steps");
  if (!(stop > start)) throw std::invalid_argument("axis needs stop > start");
  AxisSpec ax;
  ax.name = std::move(name);
  ax.uniform = true;
  ax.start = start;
  ax.stop = stop;
  ax.values.resize(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    ax.values[static_cast<std::size_t>(i)] =
        start + (stop - start) * i / (steps - 1);
  }
  return ax;
}

AxisSpec AxisSpec::list_axis(std::string name, std::vector<double> values) {
  AxisSpec ax;
  ax.name = std::move(name);
  ax.uniform = false;
  ax.values = std::move(values);
  return ax;
}

const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> q = {
      "C_thermal", "C_ground", "C_out", "F", "F_A", "C_channel", "region"};
  return q;
}

bool is_teleport_quantity(const std::string& name) {
  return name == "C_out" || name == "F";
}

void validate_spec(const SweepSpec& spec) {
  validate_params(spec.fixed);
  validate_input(spec.input);
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw std::invalid_argument("sweep needs 1 or 2 axes");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
    throw std::invalid_argument("sweep axes must be distinct");
  }
  if (spec.quantities.empty()) {
    throw std::invalid_argument("sweep needs at least one quantity");
  }
  for (std::size_t i = 0; i < spec.quantities.size(); ++i) {
    const auto& q = spec.quantities[i];
    const auto& known = known_quantities();
    if (std::find(known.begin(), known.end(), q) == known.end()) {
      throw std::invalid_argument("unknown quantity: " + q);
    }
    for (std::size_t j = i + 1; j < spec.quantities.size(); ++j) {
      if (spec.quantities[j] == q) {
        throw std::invalid_argument("duplicate quantity: " + q);
      }
    }
  }
  const bool any_teleport =
      std::any_of(spec.quantities.begin(), spec.quantities.end(),
                  [](const std::string& q) { return is_teleport_quantity(q); });
  const bool any_thermal =
      std::any_of(spec.quantities.begin(), spec.quantities.end(),
                  [](const std::string& q) { return q != "C_ground"; });
  bool has_t_axis = false;
  for (const auto& ax : spec.axes) {
    if (!is_axis_name(ax.name)) {
      throw std::invalid_argument("unknown axis name: " + ax.name);
    }
    if (ax.values.size() < 2) {
      throw std::invalid_argument("axis " + ax.name + " needs at least 2 points");
    }
    for (double v : ax.values) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("axis " + ax.name + " has non-finite values");
      }
      if (ax.name == "gamma" && std::abs(v) > 1.0) {
        throw std::invalid_argument("gamma axis values must lie in [-1, 1]");
      }
      if (ax.name == "theta" && (v < 0.0 || v > std::numbers::pi)) {
        throw std::invalid_argument("theta axis values must lie in [0, pi]");
      }
      if (ax.name == "T" && any_thermal && !(v > 0.0)) {
        throw std::invalid_argument("T axis values must be positive");
      }
    }
    if ((ax.name == "theta" || ax.name == "phi") && !any_teleport) {
      throw std::invalid_argument(
          "axis " + ax.name + " only affects teleportation quantities");
    }
    if (ax.name == "T") has_t_axis = true;
  }
  if (any_thermal && !has_t_axis && !(spec.fixed.T > 0.0)) {
    throw std::invalid_argument("thermal quantities require T > 0");
  }
  if (spec.note.find('\n') != std::string::npos) {
    throw std::invalid_argument("note must be a single line");
  }
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  validate_spec(spec);
  SweepResult r;
  r.spec = spec;
  std::size_t total = 1;
  for (const auto& ax : spec.axes) {
    r.shape.push_back(ax.values.size());
    total *= ax.values.size();
  }
  r.columns.assign(spec.quantities.size(), std::vector<double>(total));
  const std::size_t n1 = spec.axes.size() == 2 ? r.shape[1] : 1;

  auto eval_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      ModelParams p = spec.fixed;
      InputState in = spec.input;
      apply_axis(spec.axes[0].name, spec.axes[0].values[row / n1], p, in);
      if (spec.axes.size() == 2) {
        apply_axis(spec.axes[1].name, spec.axes[1].values[row % n1], p, in);
      }
      for (std::size_t qi = 0; qi < spec.quantities.size(); ++qi) {
        r.columns[qi][row] = evaluate(spec.quantities[qi], p, in);
      }
    }
  };

  int n_workers = threads > 0
                      ? threads
                      : static_cast<int>(std::clamp(
                            std::thread::hardware_concurrency(), 1u, 16u));
  n_workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(n_workers), total));

  if (n_workers <= 1) {
    eval_rows(0, total);
  } else {
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    const std::size_t chunk = (total + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const std::size_t begin = std::min(total, w * chunk);
      const std::size_t end = std::min(total, begin + chunk);
      pool.emplace_back([&, begin, end] {
        try {
          eval_rows(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  detect_slices(r);
  return r;
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  const SweepSpec& spec = result.spec;
  os << "# spec:";
  if (!spec.recipe.empty()) os << " recipe=" << spec.recipe;
  os << " quantities=" << join(spec.quantities, ',');
  os << " axes=[";
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    if (i) os << ',';
    os << axis_echo(spec.axes[i]);
  }
  os << "]";
  const ModelParams& p = spec.fixed;
  os << " J=" << format_double(p.J) << " gamma=" << format_double(p.gamma)
     << " Jz=" << format_double(p.Jz) << " D=" << format_double(p.D)
     << " B=" << format_double(p.B) << " b=" << format_double(p.b)
     << " T=" << format_double(p.T)
     << " theta=" << format_double(spec.input.theta)
     << " phi=" << format_double(spec.input.phi);
  if (!spec.note.empty()) os << " note=" << spec.note;
  os << '\n';

  for (const auto& ax : spec.axes) os << ax.name << ',';
  os << join(spec.quantities, ',') << '\n';

  const std::size_t total = result.columns.empty() ? 0 : result.columns[0].size();
  const std::size_t n1 = spec.axes.size() == 2 ? result.shape[1] : 1;
  for (std::size_t row = 0; row < total; ++row) {
    os << format_double(spec.axes[0].values[row / n1]);
    if (spec.axes.size() == 2) {
      os << ',' << format_double(spec.axes[1].values[row % n1]);
    }
    for (const auto& col : result.columns) {
      os << ',' << format_double(col[row]);
    }
    os << '\n';
  }
}

SweepSpec recipe(const std::string& name) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  SweepSpec s;
  s.recipe = name;
  if (name == "fig1") {
    s.fixed = {.J = 1.0, .gamma = 0.5, .Jz = -1.0, .D = 0.0, .B = 0.8, .b = 0.0, .T = 0.0};
    s.axes = {AxisSpec::uniform_axis("b", 0.0, 3.0, 300)};
    s.quantities = {"C_ground"};
  } else if (name == "fig2") {
    s.fixed = {.J = 1.0, .gamma = 0.8, .Jz = -1.0, .D = 0.0, .B = 0.8, .b = 0.0, .T = 0.0};
    s.axes = {AxisSpec::uniform_axis("D", 0.0, 3.0, 300),
              AxisSpec::list_axis("b", {0.0, 0.5, 1.0})};
    s.quantities = {"C_ground"};
    s.note = "J=1 and B=0.8 carried over from fig1";
  } else if (name == "fig3") {
    s.fixed = {.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 0.0, .B = 4.0, .b = 2.5, .T = 0.01};
    s.axes = {AxisSpec::uniform_axis("T", 0.01, 3.0, 100),
              AxisSpec::uniform_axis("D", 0.0, 6.0, 61)};
    s.quantities = {"C_thermal"};
    s.note = "Jz=0.5 inferred; the source dataset leaves it unstated";
  } else if (name == "fig4") {
    s.fixed = {.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 0.0, .B = 4.0, .b = 2.5, .T = 0.01};
    s.axes = {AxisSpec::uniform_axis("T", 0.01, 3.0, 300),
              AxisSpec::list_axis("D", {0.0, 2.0, 4.51, 6.0})};
    s.quantities = {"C_thermal"};
    s.note = "Jz=0.5 inferred; the source dataset leaves it unstated";
  } else if (name == "fig5") {
    s.fixed = {.J = 1.0, .gamma = 0.3, .Jz = 0.5, .D = 0.0, .B = 5.0, .b = 0.0, .T = 0.3};
    s.axes = {AxisSpec::uniform_axis("b", 0.0, 5.0, 101),
              AxisSpec::uniform_axis("D", 0.0, 6.0, 101)};
    s.quantities = {"C_thermal"};
    s.note = "panel (a); panel (b) swaps the b axis for B at b=2";
  } else if (name == "fig6") {
    s.fixed = {.J = 1.0, .gamma = 0.3, .Jz = 1.0, .D = 0.0, .B = 1.0, .b = 0.5, .T = 0.1};
    s.axes = {AxisSpec::uniform_axis("D", 0.0, 6.0, 121),
              AxisSpec::uniform_axis("theta", 0.0, half_pi, 51)};
    s.quantities = {"C_out"};
    s.note = "panel (a), positive-Jz branch with Jz=1; C_in = sin(theta)";
  } else if (name == "fig7") {
    s.fixed = {.J = 1.0, .gamma = 0.3, .Jz = 1.0, .D = 0.0, .B = 1.0, .b = 0.5, .T = 0.1};
    s.axes = {AxisSpec::uniform_axis("D", 0.0, 6.0, 121),
              AxisSpec::uniform_axis("theta", 0.0, half_pi, 51)};
    s.quantities = {"F"};
    s.note = "panel (a), positive-Jz branch with Jz=1; C_in = sin(theta)";
  } else if (name == "fig8") {
    s.fixed = {.J = 1.0, .gamma = 0.3, .Jz = 0.0, .D = 0.0, .B = 1.0, .b = 0.5, .T = 0.1};
    s.input = {.theta = half_pi, .phi = 0.0};
    s.axes = {AxisSpec::uniform_axis("Jz", -1.0, 1.0, 41),
              AxisSpec::uniform_axis("D", 0.0, 6.0, 61)};
    s.quantities = {"F_A", "C_out", "F", "C_channel"};
    s.note = "theta=pi/2 fixes C_in=1";
  } else {
    throw std::invalid_argument("unknown recipe: " + name);
  }
  return s;
}

std::vector<std::string> recipe_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

}  // namespace xyzdm
