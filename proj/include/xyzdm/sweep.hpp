#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "xyzdm/model.hpp"
#include "xyzdm/teleportation.hpp"

namespace xyzdm {

// One sweep axis: a named parameter with the grid values it takes. Uniform
// axes remember their start/stop/steps description so the CSV header can
// echo the spec canonically; list axes echo their values verbatim.
struct AxisSpec {
  std::string name;  // ModelParams field name, or theta / phi
  std::vector<double> values;
  bool uniform = false;
  double start = 0.0;
  double stop = 0.0;

  static AxisSpec uniform_axis(std::string name, double start, double stop,
                               int steps);
  static AxisSpec list_axis(std::string name, std::vector<double> values);
};

struct SweepSpec {
  ModelParams fixed;
  InputState input;                     // baseline angles for teleportation quantities
  std::vector<AxisSpec> axes;           // 1 or 2 axes
  std::vector<std::string> quantities;  // 1+ distinct known quantity names
  std::string note;                     // free-form annotation echoed in the header
  std::string recipe;                   // non-empty for built-in recipes
};

// Known quantity names: C_thermal, C_ground, C_out, F, F_A, C_channel, region.
const std::vector<std::string>& known_quantities();

bool is_teleport_quantity(const std::string& name);

// Throws std::invalid_argument describing the first violated rule: unknown
// axis or quantity names, duplicate axes, fewer than 2 grid points, theta/phi
// axes without a teleportation quantity, non-positive temperatures reached by
// a thermal quantity, or gamma values outside [-1, 1].
void validate_spec(const SweepSpec& spec);

// A sudden jump along one grid slice: the step from left to right exceeded
// ten times the median nonzero step change of that slice.
struct Transition {
  std::string quantity;
  std::string axis;        // name of the axis the slice runs along
  double left = 0.0;       // axis values bracketing the jump
  double right = 0.0;
  std::string other_axis;  // empty for 1D sweeps
  double other_value = 0.0;
  double delta = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<std::size_t> shape;            // points per axis
  std::vector<std::vector<double>> columns;  // per quantity, row-major over axes
  std::vector<Transition> transitions;
};

// Evaluates every quantity on the full grid. Rows are row-major in the axis
// order; positive thread counts force a worker count, 0 picks one from the
// hardware. Results are written by index, so the output is identical for
// every worker count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

// Writes the stable CSV form: one `# spec:` echo line, one column-name line
// (axis names then quantities), then data rows; LF endings, shortest
// round-trip number formatting, no trailing whitespace. Transitions are not
// part of the CSV.
void emit_csv(const SweepResult& result, std::ostream& os);

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

// Built-in figure datasets fig1..fig8. Throws std::invalid_argument for
// unknown names.
SweepSpec recipe(const std::string& name);

std::vector<std::string> recipe_names();

}  // namespace xyzdm
