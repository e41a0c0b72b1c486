#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xyzdm/entanglement.hpp"
#include "xyzdm/model.hpp"
#include "xyzdm/sweep.hpp"
#include "xyzdm/teleportation.hpp"
#include "xyzdm/thermal.hpp"
#include "xyzdm/verify.hpp"

namespace {

using namespace xyzdm;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return format_double(v); }

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : "none";
}

void print_matrix_human(const std::string& name, const Matrix4c& m,
                        std::ostream& os) {
  os << name << " =\n";
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      os << "  (" << fmt(m(i, j).real()) << "," << fmt(m(i, j).imag()) << ")";
    }
    os << '\n';
  }
}

void print_matrix_csv(const Matrix4c& m, std::ostream& os) {
  os << "i,j,re,im\n";
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      os << i << ',' << j << ',' << fmt(m(i, j).real()) << ','
         << fmt(m(i, j).imag()) << '\n';
    }
  }
}

void print_scalar(const std::string& name, const std::string& value, bool csv,
                  std::ostream& os) {
  if (csv) {
    os << name << ',' << value << '\n';
  } else {
    os << name << " = " << value << '\n';
  }
}

bool wants_ground_route(const ModelParams& p) { return !(p.T > 0.0); }

void notice_ground_route() {
  std::cerr << "# notice: T <= 0, reporting the ground-state value\n";
}

int cmd_eval(const std::string& quantity, const ModelParams& p,
             const InputState& in, bool csv, bool numeric, std::ostream& os) {
  validate_params(p);
  if (quantity == "hamiltonian") {
    const Matrix4c h = build_hamiltonian(p);
    csv ? print_matrix_csv(h, os) : print_matrix_human("hamiltonian", h, os);
    return kExitOk;
  }
  if (quantity == "spectrum") {
    const SpectralData sd = spectral_data(p);
    static const char* kLevel[4] = {"central_plus", "central_minus",
                                    "outer_plus", "outer_minus"};
    if (csv) {
      os << "xi," << fmt(sd.xi) << '\n' << "eta," << fmt(sd.eta) << '\n';
      for (int i = 0; i < 4; ++i) {
        os << "energy_" << kLevel[i] << ',' << fmt(sd.energies[i]) << '\n';
      }
    } else {
      os << "xi = " << fmt(sd.xi) << '\n' << "eta = " << fmt(sd.eta) << '\n';
      for (int i = 0; i < 4; ++i) {
        os << "energy[" << kLevel[i] << "] = " << fmt(sd.energies[i]) << "  state = (";
        for (int k = 0; k < 4; ++k) {
          os << (k ? ", " : "") << "(" << fmt(sd.states[i][k].real()) << ","
             << fmt(sd.states[i][k].imag()) << ")";
        }
        os << ")\n";
      }
      os << "ground level = " << kLevel[sd.ground_index()]
         << "  gap = " << fmt(sd.ground_gap()) << '\n';
    }
    return kExitOk;
  }
  if (quantity == "state") {
    if (wants_ground_route(p)) {
      notice_ground_route();
      const Matrix4c rho = ground_state_density(p);
      csv ? print_matrix_csv(rho, os) : print_matrix_human("state", rho, os);
      return kExitOk;
    }
    const Matrix4c rho =
        numeric ? gibbs_numeric(p) : xstate_to_matrix(gibbs_closed_form(p));
    csv ? print_matrix_csv(rho, os) : print_matrix_human("state", rho, os);
    if (!csv && !numeric) {
      os << "log_partition = " << fmt(gibbs_closed_form(p).log_partition)
         << '\n';
    }
    return kExitOk;
  }
  if (quantity == "concurrence") {
    double c = 0.0;
    if (wants_ground_route(p)) {
      notice_ground_route();
      c = numeric ? wootters_concurrence(ground_state_density(p))
                  : ground_state_concurrence(p);
    } else {
      c = numeric ? wootters_concurrence(gibbs_numeric(p))
                  : thermal_concurrence(p);
    }
    print_scalar("concurrence", fmt(c), csv, os);
    return kExitOk;
  }
  if (quantity == "ground") {
    print_scalar("C_ground", fmt(ground_state_concurrence(p)), csv, os);
    return kExitOk;
  }
  if (quantity == "lambdas") {
    const LambdaQuad l = thermal_lambdas(p);
    if (csv) {
      os << "l1," << fmt(l.l1) << "\nl2," << fmt(l.l2) << "\nl3," << fmt(l.l3)
         << "\nl4," << fmt(l.l4) << '\n';
    } else {
      os << "lambda quad = (" << fmt(l.l1) << ", " << fmt(l.l2) << ", "
         << fmt(l.l3) << ", " << fmt(l.l4) << ")  C = "
         << fmt(l.concurrence()) << '\n';
    }
    return kExitOk;
  }
  if (quantity == "eof") {
    double c = 0.0;
    if (wants_ground_route(p)) {
      notice_ground_route();
      c = ground_state_concurrence(p);
    } else {
      c = thermal_concurrence(p);
    }
    print_scalar("EoF", fmt(entanglement_of_formation(c)), csv, os);
    return kExitOk;
  }
  if (quantity == "bellprobs") {
    const auto q = bell_probabilities(numeric
                                          ? gibbs_numeric(p)
                                          : xstate_to_matrix(gibbs_closed_form(p)));
    if (csv) {
      os << "q0," << fmt(q[0]) << "\nq1," << fmt(q[1]) << "\nq2," << fmt(q[2])
         << "\nq3," << fmt(q[3]) << '\n';
    } else {
      os << "bell probabilities = (" << fmt(q[0]) << ", " << fmt(q[1]) << ", "
         << fmt(q[2]) << ", " << fmt(q[3]) << ")\n";
    }
    return kExitOk;
  }
  if (quantity == "cout") {
    double c = 0.0;
    if (numeric) {
      const Matrix4c rin = input_density(in);
      c = wootters_concurrence(teleport_density(gibbs_numeric(p), rin));
    } else {
      c = output_concurrence_closed(p, in);
    }
    print_scalar("C_out", fmt(c), csv, os);
    return kExitOk;
  }
  if (quantity == "fidelity") {
    double f = 0.0;
    if (numeric) {
      const Matrix4c rin = input_density(in);
      f = fidelity(rin, teleport_density(gibbs_numeric(p), rin));
    } else {
      f = fidelity_closed(p, in);
    }
    print_scalar("F", fmt(f), csv, os);
    return kExitOk;
  }
  if (quantity == "favg") {
    const double f =
        numeric ? average_fidelity_quadrature(p) : average_fidelity(p);
    print_scalar("F_A", fmt(f), csv, os);
    return kExitOk;
  }
  if (quantity == "dc") {
    print_scalar("D_c", fmt_opt(critical_dm(p)), csv, os);
    return kExitOk;
  }
  if (quantity == "bc") {
    print_scalar("b_c", fmt_opt(critical_b(p)), csv, os);
    return kExitOk;
  }
  if (quantity == "tc1" || quantity == "tc2") {
    const auto tc = critical_temperatures(p);
    print_scalar(quantity == "tc1" ? "T_c1" : "T_c2",
                 fmt_opt(quantity == "tc1" ? tc.first : tc.second), csv, os);
    return kExitOk;
  }
  if (quantity == "region") {
    const Region r = classify_region(p);
    if (csv) {
      os << "region," << static_cast<int>(r) << '\n';
    } else {
      os << "region = " << region_name(r) << " (" << static_cast<int>(r)
         << ")\n";
    }
    return kExitOk;
  }
  throw UsageError("unknown quantity: " + quantity);
}

AxisSpec parse_axis(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0) {
    throw UsageError("axis must look like name:start:stop:steps or name:{v1,v2,...}: " + text);
  }
  const std::string name = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  try {
    if (!rest.empty() && rest.front() == '{') {
      if (rest.back() != '}') throw UsageError("unterminated axis list: " + text);
      std::vector<double> values;
      std::stringstream ss(rest.substr(1, rest.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
      return AxisSpec::list_axis(name, std::move(values));
    }
    std::stringstream ss(rest);
    std::string item;
    std::vector<std::string> parts;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
      throw UsageError("axis must look like name:start:stop:steps or name:{v1,v2,...}: " + text);
    }
    return AxisSpec::uniform_axis(name, std::stod(parts[0]), std::stod(parts[1]),
                                  std::stoi(parts[2]));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad axis '") + text + "': " + e.what());
  } catch (const std::out_of_range&) {
    throw UsageError("axis value out of range: " + text);
  }
}

void print_transitions(const SweepResult& result, std::ostream& os) {
  for (const auto& t : result.transitions) {
    os << "# transition: quantity=" << t.quantity << " axis=" << t.axis;
    if (!t.other_axis.empty()) {
      os << " other=" << t.other_axis << "=" << fmt(t.other_value);
    }
    os << " between=" << fmt(t.left) << "," << fmt(t.right)
       << " delta=" << fmt(t.delta) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal entanglement and teleportation of a two-qubit XYZ chain "
               "with Dzyaloshinskii-Moriya coupling in an inhomogeneous field"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  ModelParams params;
  InputState input;
  app.add_option("--J", params.J, "planar exchange strength")->capture_default_str();
  app.add_option("--gamma", params.gamma, "XY anisotropy in [-1, 1]")->capture_default_str();
  app.add_option("--Jz", params.Jz, "z-axis exchange strength")->capture_default_str();
  app.add_option("--D", params.D, "Dzyaloshinskii-Moriya strength")->capture_default_str();
  app.add_option("--B", params.B, "uniform field")->capture_default_str();
  app.add_option("--b", params.b, "field inhomogeneity")->capture_default_str();
  app.add_option("--T", params.T, "temperature (0 selects ground-state quantities)")->capture_default_str();
  app.add_option("--theta", input.theta, "input-state polar angle")->capture_default_str();
  app.add_option("--phi", input.phi, "input-state azimuthal angle")->capture_default_str();
  app.set_config("--config", "", "key = value file with the same names as the flags");

  auto* eval = app.add_subcommand("eval", "evaluate one quantity at the given parameters");
  eval->fallthrough();
  std::string quantity;
  eval->add_option("quantity", quantity,
                   "hamiltonian|spectrum|state|concurrence|ground|eof|lambdas|"
                   "bellprobs|cout|fidelity|favg|dc|bc|tc1|tc2|region")
      ->required();
  bool eval_csv = false, eval_numeric = false;
  eval->add_flag("--csv", eval_csv, "machine-readable output");
  eval->add_flag("--numeric", eval_numeric,
                 "use the oracle evaluation path instead of the closed forms");

  auto* sweep = app.add_subcommand("sweep", "evaluate quantities over a parameter grid, emit CSV");
  sweep->fallthrough();
  std::string recipe_name;
  sweep->add_option("recipe", recipe_name, "built-in dataset: fig1..fig8");
  std::vector<std::string> axis_args;
  sweep->add_option("--axis", axis_args,
                    "axis as name:start:stop:steps or name:{v1,v2,...} (max 2)");
  std::vector<std::string> quantity_args;
  sweep->add_option("--quantity", quantity_args,
                    "C_thermal|C_ground|C_out|F|F_A|C_channel|region (repeatable)");
  std::string out_path;
  sweep->add_option("-o,--output", out_path,
                    "output file (default stdout); relative paths resolve "
                    "against XYZDM_OUTPUT_DIR when set");
  int threads = 0;
  sweep->add_option("--threads", threads, "worker threads (0 = auto)");
  std::string note;
  sweep->add_option("--note", note, "annotation echoed in the CSV header");

  auto* verify = app.add_subcommand("verify", "run the closed-form vs oracle suites");
  verify->fallthrough();
  VerifyOptions vopts;
  verify->add_option("--samples", vopts.samples, "draws per suite (0 = suite defaults)");
  verify->add_option("--seed", vopts.seed, "random seed")->capture_default_str();
  verify->add_option("--suite", vopts.suite, "run one suite only");
  bool strict = false;
  verify->add_flag("--strict", strict,
                   "audit discrepancies fail the run and are fully itemized");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) {
      return cmd_eval(quantity, params, input, eval_csv, eval_numeric, std::cout);
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      if (!recipe_name.empty()) {
        if (!axis_args.empty() || !quantity_args.empty()) {
          throw UsageError("a recipe cannot be combined with --axis/--quantity");
        }
        spec = recipe(recipe_name);
        // Explicit model flags override the recipe's baseline.
        if (app.count("--J")) spec.fixed.J = params.J;
        if (app.count("--gamma")) spec.fixed.gamma = params.gamma;
        if (app.count("--Jz")) spec.fixed.Jz = params.Jz;
        if (app.count("--D")) spec.fixed.D = params.D;
        if (app.count("--B")) spec.fixed.B = params.B;
        if (app.count("--b")) spec.fixed.b = params.b;
        if (app.count("--T")) spec.fixed.T = params.T;
        if (app.count("--theta")) spec.input.theta = input.theta;
        if (app.count("--phi")) spec.input.phi = input.phi;
      } else {
        if (axis_args.empty() || quantity_args.empty()) {
          throw UsageError("sweep needs a recipe name or --axis plus --quantity");
        }
        spec.fixed = params;
        spec.input = input;
        for (const auto& a : axis_args) spec.axes.push_back(parse_axis(a));
        spec.quantities = quantity_args;
      }
      if (!note.empty()) spec.note = note;
      try {
        validate_spec(spec);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }

      const SweepResult result = run_sweep(spec, threads);
      print_transitions(result, std::cerr);

      if (out_path.empty()) {
        emit_csv(result, std::cout);
      } else {
        std::filesystem::path dest(out_path);
        if (dest.is_relative()) {
          if (const char* dir = std::getenv("XYZDM_OUTPUT_DIR")) {
            dest = std::filesystem::path(dir) / dest;
          }
        }
        std::ofstream out(dest, std::ios::binary);
        if (!out) {
          std::cerr << "error: cannot open " << dest.string() << " for writing\n";
          return kExitDomain;
        }
        emit_csv(result, out);
        if (!out.good()) {
          std::cerr << "error: short write to " << dest.string() << '\n';
          return kExitDomain;
        }
      }
      return kExitOk;
    }

    // verify
    try {
      vopts.strict = strict;
      const auto results = run_verification(vopts);
      render_report(results, std::cout);
      return verification_exit_code(results, strict);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}
