#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xyzdm {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 0;    // 0 keeps each suite's default draw count
  std::string suite;  // empty runs every suite, else one exact name
  bool strict = false;  // audits escalate to failures and itemize every discrepancy
};

// Core suites compare a closed form against an independent oracle and must
// stay within tolerance. Audit suites run the same machinery over the
// formulas with disputed phase factors: they report agree/discrepancy and
// never fail the run unless strict is set.
struct SuiteResult {
  std::string name;
  int samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool audit = false;
  bool ok = true;
  std::vector<std::string> details;  // itemized offending draws

  const char* status() const;
};

std::vector<std::string> verification_suites();

// Draws are seeded per suite, so a filtered run reproduces exactly the same
// numbers as the full run.
std::vector<SuiteResult> run_verification(const VerifyOptions& opts);

// Plain-text report: one `suite,max_error,tolerance,status` line per suite,
// each followed by its `detail,...` lines.
void render_report(const std::vector<SuiteResult>& results, std::ostream& os);

// 0 when every core suite passed (and, under strict, every audit agreed),
// 1 otherwise.
int verification_exit_code(const std::vector<SuiteResult>& results, bool strict);

}  // namespace xyzdm
