#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "subordkit/admiss.hpp"
#include "subordkit/domains.hpp"
#include "subordkit/rng.hpp"

/// Verification-suite runners and deterministic report emission. Every
/// criterion runner computes its expected values from an oracle independent
/// of the code path under test and reports signed margins; the assembled
/// report is byte-stable for a fixed (config, seed).
namespace subordkit {

/// Where a case's expected value comes from: a constant stated in the source
/// material ("paper"), an immediate algebraic fact ("trivial"), or an
/// independently computed oracle ("derived").
enum class Provenance { Paper, Trivial, Derived };

const char* to_string(Provenance p) noexcept;

/// One verified check: the inputs it ran on, the expected value with its
/// provenance, the computed value, and a signed margin (>= 0 passes).
struct CaseResult {
  std::string id;
  nlohmann::ordered_json inputs;
  nlohmann::ordered_json expected_value;
  Provenance provenance = Provenance::Derived;
  nlohmann::ordered_json actual;
  double margin = 0.0;
  bool pass = false;
};

/// Outcome of one numbered criterion: its cases, wall time, and the stated
/// runtime budget (0 when the criterion states none). Timing never enters
/// the serialized report, only the console summary, so reports stay
/// byte-stable across runs.
struct CriterionResult {
  int index = 0;
  std::string title;
  std::vector<CaseResult> cases;
  double elapsed_seconds = 0.0;
  double budget_seconds = 0.0;
  std::string summary;
  bool cases_pass = false;

  bool within_budget() const {
    return budget_seconds == 0.0 || elapsed_seconds < budget_seconds;
  }
  bool pass() const { return cases_pass && within_budget(); }
};

/// Suite knobs. "quick" scales sample counts down (same code paths, same
/// determinism guarantees); the stated criteria run at full budgets.
struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  bool quick = false;
};

/// Criteria implemented by run_criterion; the determinism criterion (10) is
/// a double-run byte comparison of the emitted report and therefore lives in
/// the harness that invokes the CLI, not here.
inline constexpr int kCriterionCount = 9;

/// Stated runtime budget in seconds for a criterion index (0 = none).
double criterion_budget_seconds(int index);

/// Runs one criterion (1-based). Throws EvalError(Config) for an index
/// outside [1, kCriterionCount].
CriterionResult run_criterion(int index, const SuiteConfig& cfg = {});

/// Runs the given criteria (default: all). Independent criteria are pulled
/// from a shared queue by thread_count() workers; results are assembled in
/// request order, so output is identical to a serial run.
std::vector<CriterionResult> run_suite(const SuiteConfig& cfg = {},
                                       std::vector<int> indices = {});

/// Assembles the {suite, cases, environment} document. Cases are flattened
/// in criterion order with ids prefixed "cNN."; the environment block echoes
/// the effective grid resolutions, tolerances, and seed.
nlohmann::ordered_json report_json(const std::vector<CriterionResult>& results,
                                   const SuiteConfig& cfg);

/// Canonical serialization: 2-space indent, LF line endings, trailing
/// newline. The only sanctioned way to turn a report into bytes.
std::string serialize_report(const nlohmann::ordered_json& doc);

/// "CRITERION n: PASS — summary" console row.
std::string criterion_line(const CriterionResult& r);

/// Floats rendered with 17 significant digits ("%.17g"): lossless for
/// doubles and identical across runs.
std::string format_float(double x);

/// "a" for real values, "a+bi" / "a-bi" otherwise; components via
/// format_float.
std::string format_complex(Complex z);

/// One CSV row: cells joined with commas and terminated with LF. Emitted
/// values never contain commas, so no quoting is needed.
std::string csv_line(const std::vector<std::string>& cells);

/// CSV dump of an admissibility scan: header "theta,m,re,im,verdict", one
/// row per entry in scan order.
std::string admissibility_csv(const std::vector<ScanEntry>& entries);

/// Uniform boundary samples of a catalog domain with declared corners
/// skipped: theta_k = 2 pi k / n. Works for unbounded entries too (the
/// cached polyline does not).
std::vector<BoundarySample> sample_domain_boundary(const TargetDomain& dom,
                                                   std::size_t n);

/// CSV dump of a boundary polyline: header "theta,re,im".
std::string boundary_csv(const std::vector<BoundarySample>& samples);

/// Parses "a" or "a,b" into a complex number. Throws EvalError(Config) on
/// malformed input.
Complex parse_complex(const std::string& text);

/// Parses a seed as decimal or 0x-prefixed hex. Throws EvalError(Config).
std::uint64_t parse_seed(const std::string& text);

/// Loads an analytic-map argument: inline JSON when the string starts with
/// '{', otherwise a path to a JSON file with the expression schema.
AnalyticMap load_map_argument(const std::string& text);

}  // namespace subordkit
