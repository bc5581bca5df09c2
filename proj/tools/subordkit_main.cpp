#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subordkit/apps.hpp"
#include "subordkit/errors.hpp"
#include "subordkit/janowski.hpp"
#include "subordkit/report.hpp"

namespace {

using nlohmann::ordered_json;
using namespace subordkit;

/// Resolves --out: empty means stdout; a trailing slash or an existing
/// directory selects <dir>/<default_name>; parent directories are created.
std::string resolve_out(const std::string& out,
                        const std::string& default_name) {
  if (out.empty()) return {};
  namespace fs = std::filesystem;
  fs::path path(out);
  std::error_code ec;
  if (out.back() == '/' || fs::is_directory(path, ec)) {
    fs::create_directories(path, ec);
    path /= default_name;
  } else if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
  }
  return path.string();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw EvalError(ErrorKind::Config, "cannot open output file: " + path);
  file << text;
  if (!file) throw EvalError(ErrorKind::Runtime, "failed writing: " + path);
}

AnalyticMap map_or_one(const std::string& text) {
  return text.empty() ? AnalyticMap::constant(1.0) : load_map_argument(text);
}

/// Label of the branch the cascade selects for these flags.
std::string branch_label(EndpointCase which, const CaseFlags& flags) {
  if (which == EndpointCase::E1 && flags.i4) return "case-i4";
  if (flags.i1) return "case-i1";
  if (flags.i2) return "case-i2";
  if (flags.i3) return "case-i3";
  return "case-else";
}

EndpointCase parse_endpoint(const std::string& token) {
  if (token == "29" || token == "E0" || token == "e0") return EndpointCase::E0;
  if (token == "210" || token == "E1" || token == "e1")
    return EndpointCase::E1;
  throw EvalError(ErrorKind::Config,
                  "--theorem must be one of {29, 210} (aliases E0, E1)");
}

// ---------------------------------------------------------------------------

struct MeansOpts {
  double t = 0.5;
  std::string x, y, mean;
};

int run_means(const MeansOpts& o) {
  const Complex x = parse_complex(o.x);
  const Complex y = parse_complex(o.y);
  Complex v;
  if (o.mean == "arithmetic") {
    v = arith_mean(o.t, x, y);
  } else if (o.mean == "geometric") {
    v = geo_mean(o.t, x, y);
  } else {
    const MeanValue mv = harm_mean(o.t, x, y);
    if (mv.flag != MeanFlag::Regular)
      std::cerr << "note: denominator is near-singular at these arguments\n";
    v = mv.value;
  }
  std::cout << format_complex(v) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SubcheckOpts {
  double t = 0.5;
  std::string theta, phi;
  std::string dom;
  std::vector<double> dom_params;
  std::size_t budget = 1000;
  std::string seed;
  std::vector<double> radii;
  std::size_t angles = 1024;
  std::string out;
};

int run_subcheck(const SubcheckOpts& o) {
  const TargetDomain dom = TargetDomain::make(o.dom, o.dom_params);
  const ThetaPhiPair pair(map_or_one(o.theta), map_or_one(o.phi));
  DiskGrid grid;
  if (!o.radii.empty()) grid.radii = o.radii;
  grid.angular_count = o.angles;
  const std::uint64_t seed = o.seed.empty() ? kDefaultSeed : parse_seed(o.seed);

  const FalsifyResult res =
      falsify_lemma(pair, o.t, dom, o.budget, seed, grid);

  ordered_json doc;
  doc["suite"] = "subcheck";
  doc["dom"] = dom.name();
  doc["t"] = o.t;
  doc["budget"] = o.budget;
  doc["seed"] = seed;
  doc["attempts"] = res.attempts;
  doc["premise_holding"] = res.premise_holding;
  doc["excluded"] = res.excluded;
  doc["premise_rate"] =
      res.attempts == 0 ? 0.0
                        : static_cast<double>(res.premise_holding) /
                              static_cast<double>(res.attempts);
  ordered_json violations = ordered_json::array();
  for (const Counterexample& cex : res.counterexamples) {
    ordered_json v;
    v["candidate"] = cex.candidate;
    v["witness"] = {{"radius", cex.witness.radius},
                    {"angle_index", cex.witness.angle_index},
                    {"re", cex.witness.value.real()},
                    {"im", cex.witness.value.imag()}};
    violations.push_back(std::move(v));
  }
  doc["violations"] = std::move(violations);
  doc["grids"] = {{"radii", grid.radii},
                  {"angular_count", grid.angular_count}};

  write_text(resolve_out(o.out, "subcheck.json"), serialize_report(doc));
  return res.counterexamples.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct AdmissOpts {
  std::string case_name;
  std::string omega;
  std::vector<double> omega_params;
  std::size_t theta_n = 1024;
  double m_max = 20.0;
  std::string out;
};

int run_admissibility(const AdmissOpts& o) {
  const AdmissCase c = parse_admiss_case(o.case_name);
  const TargetDomain omega = TargetDomain::make(o.omega, o.omega_params);
  if (o.m_max < 1.0)
    throw EvalError(ErrorKind::Config, "--m-max must be at least 1");
  const std::vector<ScanEntry> entries =
      scan_case(c, omega, o.theta_n, default_m_sweep(o.m_max));
  write_text(resolve_out(o.out, "admissibility.csv"),
             admissibility_csv(entries));
  const bool violated =
      std::any_of(entries.begin(), entries.end(), [](const ScanEntry& e) {
        return e.verdict == Containment::Inside;
      });
  return violated ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct JanowskiCheckOpts {
  std::string a, b, d, e;
  int k_max = 100;
  std::string out;
};

int run_janowski_check(const JanowskiCheckOpts& o) {
  const JanowskiQuad q(parse_rational(o.a), parse_rational(o.b),
                       parse_rational(o.d), parse_rational(o.e));
  if (o.k_max < 1)
    throw EvalError(ErrorKind::Config, "--k-max must be at least 1");
  const std::vector<Rational> k_range =
      rational_grid(Rational(1), Rational(o.k_max), Rational(1));
  const ConditionReport cond = check_conditions(q, k_range);
  const BoundResult bound = final_bound(q);

  ordered_json doc;
  doc["suite"] = "janowski-check";
  doc["a"] = format_rational(q.a);
  doc["b"] = format_rational(q.b);
  doc["d"] = format_rational(q.d);
  doc["e"] = format_rational(q.e);
  doc["cond3"] = cond.cond3;
  doc["cond3_margin"] = format_rational(cond.cond3_margin);
  doc["cond2_all"] = cond.cond2_all;
  doc["cond2_k_max"] = o.k_max;
  doc["cond2_asymptote_sign"] = cond.cond2_asymptote_sign;
  doc["cond4"] = cond.cond4;
  doc["cond4_margin"] = format_rational(cond.cond4_margin);
  doc["all_conditions"] = cond.all();
  ordered_json bound_doc;
  bound_doc["applicable"] = bound.applicable;
  if (bound.applicable) {
    bound_doc["value"] = format_rational(bound.value);
    bound_doc["float"] = rational_to_double(bound.value);
  }
  doc["final_bound"] = std::move(bound_doc);

  write_text(resolve_out(o.out, "janowski-check.json"),
             serialize_report(doc));
  return cond.all() ? 0 : 1;
}

struct JanowskiScanOpts {
  std::string a_step = "1/8", b_step = "1/4", d_step = "1/2", e_step = "1/16";
  int k_max = 100;
  std::string out;
};

int run_janowski_scan(const JanowskiScanOpts& o) {
  if (o.k_max < 1)
    throw EvalError(ErrorKind::Config, "--k-max must be at least 1");
  const auto grid = [](const std::string& step) {
    return rational_grid(Rational(-1), Rational(1), parse_rational(step));
  };
  const std::vector<FeasibilityHit> hits = feasibility_scan(
      grid(o.a_step), grid(o.b_step), grid(o.d_step), grid(o.e_step),
      rational_grid(Rational(1), Rational(o.k_max), Rational(1)));

  ordered_json doc;
  doc["suite"] = "janowski-scan";
  doc["steps"] = {{"a", o.a_step},
                  {"b", o.b_step},
                  {"d", o.d_step},
                  {"e", o.e_step}};
  doc["k_max"] = o.k_max;
  doc["count"] = hits.size();
  ordered_json rows = ordered_json::array();
  for (const FeasibilityHit& hit : hits) {
    ordered_json row;
    row["a"] = format_rational(hit.quad.a);
    row["b"] = format_rational(hit.quad.b);
    row["d"] = format_rational(hit.quad.d);
    row["e"] = format_rational(hit.quad.e);
    row["bound"] = format_rational(hit.bound);
    row["float"] = rational_to_double(hit.bound);
    rows.push_back(std::move(row));
  }
  doc["hits"] = std::move(rows);

  write_text(resolve_out(o.out, "janowski-scan.json"), serialize_report(doc));
  return 0;
}

// ---------------------------------------------------------------------------

struct ThresholdOpts {
  double alpha = 0.0;
  double rho = 0.0;
  double gamma = 1.0;
  double mu = 1.0;
  double delta = 1.0;
  std::string theorem;
  bool has_point = false;
  double x = 0.0;
  double my = 0.0;
  bool oracle = false;
  std::size_t x_n = 400;
  std::size_t my_n = 400;
  std::string out;
};

int run_threshold(const ThresholdOpts& o) {
  const EndpointCase which = parse_endpoint(o.theorem);
  const ThresholdParams params(o.gamma, o.alpha, o.mu, o.delta, o.rho);

  ordered_json doc;
  doc["suite"] = "threshold";
  doc["alpha"] = o.alpha;
  doc["rho"] = o.rho;
  doc["gamma"] = o.gamma;
  doc["mu"] = o.mu;
  doc["delta"] = o.delta;
  doc["endpoint"] = which == EndpointCase::E0 ? "E0" : "E1";
  doc["threshold_sup"] = threshold_sup(params, which);

  ordered_json branches = ordered_json::array();
  for (const CaseFlags& flags : reachable_cases(o.alpha, o.rho)) {
    const std::string label = branch_label(which, flags);
    if (std::find(branches.begin(), branches.end(), label) == branches.end())
      branches.push_back(label);
  }
  doc["reachable_branches"] = std::move(branches);

  if (o.has_point) {
    const BoundaryPoint pt{o.x, o.my};
    const CaseFlags flags = case_flags(o.alpha, o.rho, pt);
    bool tie = false;
    const double beta = beta_at(o.alpha, o.rho, which, pt, &tie);
    const double re = which == EndpointCase::E0 ? re_E0(o.alpha, o.rho, pt)
                                                : re_E1(o.alpha, o.rho, pt);
    ordered_json point;
    point["x"] = o.x;
    point["my"] = o.my;
    point["my_bound"] = boundary_my_bound(o.alpha, o.x);
    point["flags"] = {{"i1", flags.i1},
                      {"i2", flags.i2},
                      {"i3", flags.i3},
                      {"i4", flags.i4}};
    point["branch"] = branch_label(which, flags);
    point["beta"] = beta;
    point["boundary_tie"] = tie;
    point["re_endpoint"] = re;
    point["margin"] = re - beta;
    point["combined_threshold"] = combined_threshold(params, which, pt);
    doc["point"] = std::move(point);
  }

  int code = 0;
  if (o.oracle) {
    const RegionalReport rep =
        regional_oracle(o.alpha, o.rho, which, RegionGrid{o.x_n, o.my_n});
    ordered_json oracle;
    oracle["x_count"] = o.x_n;
    oracle["my_count"] = o.my_n;
    oracle["worst_margin"] = rep.worst_margin;
    oracle["worst_x"] = rep.worst_point.x;
    oracle["worst_my"] = rep.worst_point.my;
    oracle["samples"] = rep.samples;
    oracle["cells"] = rep.cells.size();
    oracle["boundary_ties"] = rep.boundary_ties;
    oracle["certified"] = rep.worst_margin <= 0.0;
    doc["oracle"] = std::move(oracle);
    if (rep.worst_margin > 0.0) code = 1;
  }

  write_text(resolve_out(o.out, "threshold.json"), serialize_report(doc));
  return code;
}

// ---------------------------------------------------------------------------

struct ApplyOpts {
  std::string corollary;
  std::string f;
  std::vector<double> params{1.0, 0.0, 1.0, 1.0, 0.0};
  std::string out;
};

int run_apply(const ApplyOpts& o) {
  const CorollaryKind kind = parse_corollary_kind(o.corollary);
  if (o.params.size() != 5)
    throw EvalError(ErrorKind::Config,
                    "--params takes gamma,alpha,mu,delta,rho (5 values)");
  const ThresholdParams params(o.params[0], o.params[1], o.params[2],
                               o.params[3], o.params[4]);
  const AnalyticMap f = load_map_argument(o.f);
  const CorollaryReport rep = corollary_check(kind, f, params);

  ordered_json doc;
  doc["suite"] = "apply";
  doc["corollary"] = to_string(kind);
  doc["params"] = {{"gamma", params.gamma},
                   {"alpha", params.alpha},
                   {"mu", params.mu},
                   {"delta", params.delta},
                   {"rho", params.rho}};
  doc["premise_min"] = rep.premise_min;
  doc["beta"] = rep.beta;
  doc["premise_passes"] = rep.premise_passes;
  doc["conclusion_min"] = rep.conclusion_min;
  doc["conclusion_holds"] = rep.conclusion_holds;
  doc["implication_violated"] = rep.implication_violated;
  doc["excluded_cut"] = rep.excluded_cut;
  doc["undefined_points"] = rep.undefined_points.size();
  doc["samples"] = rep.samples;

  write_text(resolve_out(o.out, "apply.json"), serialize_report(doc));
  return rep.implication_violated ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct VerifyOpts {
  std::string out;
  std::string seed;
  std::string budget;
  std::string criteria;
  std::string config;
};

std::vector<int> parse_criteria(const std::string& text) {
  std::vector<int> indices;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      indices.push_back(value);
    } catch (const std::exception&) {
      throw EvalError(ErrorKind::Config,
                      "--criteria must be a comma list of indices");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return indices;
}

int run_verify(const VerifyOpts& o) {
  SuiteConfig cfg;
  std::string out = "report.json";
  std::string budget;
  std::vector<int> indices;

  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in)
      throw EvalError(ErrorKind::Config,
                      "cannot open config file: " + o.config);
    nlohmann::json file;
    try {
      in >> file;
    } catch (const nlohmann::json::exception& e) {
      throw EvalError(ErrorKind::Config,
                      std::string("invalid config JSON: ") + e.what());
    }
    if (!file.is_object())
      throw EvalError(ErrorKind::Config, "config must be a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (key == "suite") {
        if (value != "verify-paper")
          throw EvalError(ErrorKind::Config,
                          "config suite must be \"verify-paper\"");
      } else if (key == "seed") {
        if (value.is_number_unsigned())
          cfg.seed = value.get<std::uint64_t>();
        else if (value.is_string())
          cfg.seed = parse_seed(value.get<std::string>());
        else
          throw EvalError(ErrorKind::Config,
                          "config seed must be an integer or string");
      } else if (key == "out") {
        out = value.get<std::string>();
      } else if (key == "budget") {
        budget = value.get<std::string>();
      } else if (key == "criteria") {
        indices = value.get<std::vector<int>>();
      } else if (key == "grids" || key == "tolerances") {
        // Validated against the suite's fixed values below, once the
        // effective budget is known.
      } else {
        throw EvalError(ErrorKind::Config, "unknown config key: " + key);
      }
    }
    // CLI flags override config values.
    if (!o.out.empty()) out = o.out;
    if (!o.seed.empty()) cfg.seed = parse_seed(o.seed);
    if (!o.budget.empty()) budget = o.budget;
    if (!o.criteria.empty()) indices = parse_criteria(o.criteria);

    if (!budget.empty() && budget != "full" && budget != "quick")
      throw EvalError(ErrorKind::Config,
                      "budget must be \"full\" or \"quick\"");
    cfg.quick = budget == "quick";

    // The suite's grids and tolerances are part of what it certifies; a
    // config may restate them but not change them.
    const ordered_json env = report_json({}, cfg)["environment"];
    for (const char* section : {"grids", "tolerances"}) {
      if (!file.contains(section)) continue;
      if (!file[section].is_object())
        throw EvalError(ErrorKind::Config,
                        std::string(section) + " must be a JSON object");
      for (const auto& [key, value] : file[section].items()) {
        if (!env[section].contains(key))
          throw EvalError(ErrorKind::Config,
                          std::string("unknown ") + section + " key: " + key);
        if (env[section][key] != value)
          throw EvalError(ErrorKind::Config,
                          std::string(section) + " setting \"" + key +
                              "\" is fixed by the suite");
      }
    }
  } else {
    if (!o.out.empty()) out = o.out;
    if (!o.seed.empty()) cfg.seed = parse_seed(o.seed);
    if (!o.budget.empty()) budget = o.budget;
    if (!o.criteria.empty()) indices = parse_criteria(o.criteria);
    if (!budget.empty() && budget != "full" && budget != "quick")
      throw EvalError(ErrorKind::Config,
                      "budget must be \"full\" or \"quick\"");
    cfg.quick = budget == "quick";
  }

  const std::vector<CriterionResult> results = run_suite(cfg, indices);
  for (const CriterionResult& r : results)
    std::cout << criterion_line(r) << "\n";

  const std::string path = resolve_out(out, "report.json");
  write_text(path, serialize_report(report_json(results, cfg)));

  const std::size_t passed = static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(),
                    [](const CriterionResult& r) { return r.pass(); }));
  const bool all = passed == results.size();
  std::cout << "RESULT: " << (all ? "PASS" : "FAIL") << " (" << passed << "/"
            << results.size() << " criteria)\n";
  if (!path.empty()) std::cout << "report: " << path << "\n";
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct ExportOpts {
  std::string what;
  std::string format = "csv";
  std::string out;
  std::string dom;
  std::vector<double> dom_params;
  std::size_t n = 4096;
  std::string case_name;
  std::string omega;
  std::vector<double> omega_params;
  std::size_t theta_n = 1024;
  double m_max = 20.0;
  int k_max = 100;
};

int run_export(const ExportOpts& o) {
  const bool csv = o.format == "csv";
  std::string text;
  if (o.what == "boundary") {
    if (o.dom.empty())
      throw EvalError(ErrorKind::Config, "--what boundary requires --dom");
    const TargetDomain dom = TargetDomain::make(o.dom, o.dom_params);
    const std::vector<BoundarySample> samples =
        sample_domain_boundary(dom, o.n);
    if (csv) {
      text = boundary_csv(samples);
    } else {
      ordered_json doc;
      doc["dom"] = dom.name();
      doc["n"] = o.n;
      ordered_json rows = ordered_json::array();
      for (const BoundarySample& s : samples)
        rows.push_back({{"theta", s.theta},
                        {"re", s.value.real()},
                        {"im", s.value.imag()}});
      doc["samples"] = std::move(rows);
      text = serialize_report(doc);
    }
  } else if (o.what == "admissibility") {
    if (o.case_name.empty() || o.omega.empty())
      throw EvalError(ErrorKind::Config,
                      "--what admissibility requires --case and --omega");
    if (o.m_max < 1.0)
      throw EvalError(ErrorKind::Config, "--m-max must be at least 1");
    const AdmissCase c = parse_admiss_case(o.case_name);
    const TargetDomain omega = TargetDomain::make(o.omega, o.omega_params);
    const std::vector<ScanEntry> entries =
        scan_case(c, omega, o.theta_n, default_m_sweep(o.m_max));
    if (csv) {
      text = admissibility_csv(entries);
    } else {
      ordered_json doc;
      doc["case"] = to_string(c);
      doc["omega"] = omega.name();
      doc["theta_n"] = o.theta_n;
      doc["m_max"] = o.m_max;
      ordered_json rows = ordered_json::array();
      for (const ScanEntry& e : entries)
        rows.push_back({{"theta", e.theta},
                        {"m", e.m},
                        {"re", e.psi.real()},
                        {"im", e.psi.imag()},
                        {"verdict", to_string(e.verdict)}});
      doc["entries"] = std::move(rows);
      text = serialize_report(doc);
    }
  } else if (o.what == "janowski-scan") {
    if (o.k_max < 1)
      throw EvalError(ErrorKind::Config, "--k-max must be at least 1");
    const std::vector<FeasibilityHit> hits =
        o.k_max == 100
            ? feasibility_scan()
            : feasibility_scan(
                  rational_grid(Rational(-1), Rational(1), Rational(1, 8)),
                  rational_grid(Rational(-1), Rational(1), Rational(1, 4)),
                  rational_grid(Rational(-1), Rational(1), Rational(1, 2)),
                  rational_grid(Rational(-1), Rational(1), Rational(1, 16)),
                  rational_grid(Rational(1), Rational(o.k_max), Rational(1)));
    if (csv) {
      text = csv_line({"a", "b", "d", "e", "bound"});
      for (const FeasibilityHit& hit : hits)
        text += csv_line({format_rational(hit.quad.a),
                          format_rational(hit.quad.b),
                          format_rational(hit.quad.d),
                          format_rational(hit.quad.e),
                          format_rational(hit.bound)});
    } else {
      ordered_json doc;
      doc["count"] = hits.size();
      ordered_json rows = ordered_json::array();
      for (const FeasibilityHit& hit : hits)
        rows.push_back({{"a", format_rational(hit.quad.a)},
                        {"b", format_rational(hit.quad.b)},
                        {"d", format_rational(hit.quad.d)},
                        {"e", format_rational(hit.quad.e)},
                        {"bound", format_rational(hit.bound)}});
      doc["hits"] = std::move(rows);
      text = serialize_report(doc);
    }
  } else {
    throw EvalError(ErrorKind::Config,
                    "--what must be one of {boundary, admissibility, "
                    "janowski-scan}");
  }

  write_text(resolve_out(o.out, o.what + (csv ? ".csv" : ".json")), text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subordkit — weighted means of analytic functions, numerical "
      "subordination checking, and threshold certification on the unit "
      "disk"};
  app.require_subcommand(1);
  app.footer(
      "Environment:\n  SUBORDKIT_THREADS  overrides the worker-thread "
      "count\n\nExit codes: 0 all checks pass, 1 assertions violated, 2 "
      "configuration error, 3 runtime evaluation error.");

  std::function<int()> runner;

  MeansOpts means_opts;
  auto* means = app.add_subcommand(
      "means-eval", "Evaluate a weighted mean of two complex numbers");
  means->add_option("--t", means_opts.t, "Weight in [0, 1]")->required();
  means->add_option("--x", means_opts.x, "First argument, \"re\" or \"re,im\"")
      ->required();
  means->add_option("--y", means_opts.y, "Second argument")->required();
  means
      ->add_option("--mean", means_opts.mean,
                   "Which mean: arithmetic, geometric, or harmonic")
      ->required()
      ->check(CLI::IsMember({"arithmetic", "geometric", "harmonic"}));
  means->callback([&] { runner = [&] { return run_means(means_opts); }; });

  SubcheckOpts sub_opts;
  auto* sub = app.add_subcommand(
      "subcheck",
      "Randomized falsification run of the operator subordination principle");
  sub->add_option("--t", sub_opts.t, "Mean weight in [0, 1]")->required();
  sub->add_option("--theta", sub_opts.theta,
                  "Theta coefficient as expression JSON or a file path "
                  "(default: constant 1)");
  sub->add_option("--phi", sub_opts.phi,
                  "Phi coefficient (default: constant 1)");
  sub->add_option("--dom", sub_opts.dom,
                  "Target domain name (halfplane, janowski, exp, sqrt, "
                  "sigmoid, crescent, sine, cardioid-poly, power)")
      ->required();
  sub->add_option("--dom-params", sub_opts.dom_params,
                  "Domain parameters, comma-separated")
      ->delimiter(',');
  sub->add_option("--budget", sub_opts.budget,
                  "Premise-holding samples to collect")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", sub_opts.seed,
                  "PRNG seed, decimal or 0x-hex (default 0xC0FFEE)");
  sub->add_option("--radii", sub_opts.radii,
                  "Disk-grid ring radii, comma-separated")
      ->delimiter(',');
  sub->add_option("--angles", sub_opts.angles, "Angles per ring")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", sub_opts.out,
                  "Output JSON path or directory (default: stdout)");
  sub->callback([&] { runner = [&] { return run_subcheck(sub_opts); }; });

  AdmissOpts adm_opts;
  auto* adm = app.add_subcommand(
      "admissibility",
      "Scan a worked admissibility case against one exclusion set (CSV)");
  adm->add_option("--case", adm_opts.case_name,
                  "Which case: exp, sqrt, or sigmoid")
      ->required();
  adm->add_option("--omega", adm_opts.omega, "Exclusion-set domain name")
      ->required();
  adm->add_option("--omega-params", adm_opts.omega_params,
                  "Exclusion-set parameters, comma-separated")
      ->delimiter(',');
  adm->add_option("--theta-n", adm_opts.theta_n, "Boundary-angle resolution")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  adm->add_option("--m-max", adm_opts.m_max, "Upper end of the m sweep")
      ->capture_default_str();
  adm->add_option("--out", adm_opts.out,
                  "Output CSV path or directory (default: stdout)");
  adm->callback([&] { runner = [&] { return run_admissibility(adm_opts); }; });

  auto* jan = app.add_subcommand(
      "janowski", "Exact-rational feasibility checks of spiral parameters");
  jan->require_subcommand(1);

  JanowskiCheckOpts jc_opts;
  auto* jcheck = jan->add_subcommand(
      "check", "Check all conditions for one parameter quadruple");
  jcheck->add_option("--A", jc_opts.a, "Rational, e.g. 3/8")->required();
  jcheck->add_option("--B", jc_opts.b, "Rational")->required();
  jcheck->add_option("--D", jc_opts.d, "Rational")->required();
  jcheck->add_option("--E", jc_opts.e, "Rational, e.g. 123/128")->required();
  jcheck->add_option("--k-max", jc_opts.k_max, "Ring-condition grid top")
      ->capture_default_str();
  jcheck->add_option("--out", jc_opts.out,
                     "Output JSON path or directory (default: stdout)");
  jcheck->callback(
      [&] { runner = [&] { return run_janowski_check(jc_opts); }; });

  JanowskiScanOpts js_opts;
  auto* jscan = jan->add_subcommand(
      "scan", "Grid scan for quadruples passing every condition");
  jscan->add_option("--a-step", js_opts.a_step, "Grid step for a (rational)")
      ->capture_default_str();
  jscan->add_option("--b-step", js_opts.b_step, "Grid step for b")
      ->capture_default_str();
  jscan->add_option("--d-step", js_opts.d_step, "Grid step for d")
      ->capture_default_str();
  jscan->add_option("--e-step", js_opts.e_step, "Grid step for e")
      ->capture_default_str();
  jscan->add_option("--k-max", js_opts.k_max, "Ring-condition grid top")
      ->capture_default_str();
  jscan->add_option("--out", js_opts.out,
                    "Output JSON path or directory (default: stdout)");
  jscan->callback(
      [&] { runner = [&] { return run_janowski_scan(js_opts); }; });

  ThresholdOpts th_opts;
  auto* th = app.add_subcommand(
      "threshold", "Piecewise starlikeness thresholds and the regional "
                   "certification oracle");
  th->add_option("--alpha", th_opts.alpha, "Order parameter in [0, 1)")
      ->required();
  th->add_option("--rho", th_opts.rho, "Coupling parameter in [0, 1]")
      ->required();
  th->add_option("--gamma", th_opts.gamma, "Convex weight in [0, 1]")
      ->capture_default_str();
  th->add_option("--mu", th_opts.mu, "Exponent in [0, 1]")
      ->capture_default_str();
  th->add_option("--delta", th_opts.delta, "Exponent in [1, 2]")
      ->capture_default_str();
  th->add_option("--theorem", th_opts.theorem,
                 "Which threshold: 29 (first kind) or 210 (second kind)")
      ->required();
  auto* th_x = th->add_option("--x", th_opts.x,
                              "Boundary-contact height (> 0) for a pointwise "
                              "evaluation");
  th->add_option("--my", th_opts.my, "Slope product at the contact (< 0)")
      ->needs(th_x);
  th->add_flag("--oracle", th_opts.oracle,
               "Run the brute-force regional oracle");
  th->add_option("--x-n", th_opts.x_n, "Oracle grid: x resolution")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  th->add_option("--my-n", th_opts.my_n, "Oracle grid: slope resolution")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  th->add_option("--out", th_opts.out,
                 "Output JSON path or directory (default: stdout)");
  th->callback([&] {
    th_opts.has_point = th_x->count() > 0;
    runner = [&] { return run_threshold(th_opts); };
  });

  ApplyOpts ap_opts;
  auto* ap = app.add_subcommand(
      "apply", "Test a starlikeness/univalence corollary on a concrete "
               "normalized function");
  ap->add_option("--corollary", ap_opts.corollary,
                 "Which corollary: starlike36, univalent38, or fz39")
      ->required();
  ap->add_option("--f", ap_opts.f,
                 "Normalized function as expression JSON or a file path")
      ->required();
  ap->add_option("--params", ap_opts.params,
                 "gamma,alpha,mu,delta,rho (comma-separated)")
      ->delimiter(',')
      ->capture_default_str();
  ap->add_option("--out", ap_opts.out,
                 "Output JSON path or directory (default: stdout)");
  ap->callback([&] { runner = [&] { return run_apply(ap_opts); }; });

  VerifyOpts vp_opts;
  auto* vp = app.add_subcommand(
      "verify-paper",
      "Run the full verification suite and emit the deterministic report");
  vp->add_option("--out", vp_opts.out,
                 "Report path or directory (default: report.json)");
  vp->add_option("--seed", vp_opts.seed,
                 "PRNG seed, decimal or 0x-hex (default 0xC0FFEE)");
  vp->add_option("--budget", vp_opts.budget,
                 "Sample budget: full (default) or quick")
      ->check(CLI::IsMember({"full", "quick"}));
  vp->add_option("--criteria", vp_opts.criteria,
                 "Comma list of criterion indices to run (default: all)");
  vp->add_option("--config", vp_opts.config,
                 "JSON config file {suite, grids, tolerances, seed, out}");
  vp->callback([&] { runner = [&] { return run_verify(vp_opts); }; });

  ExportOpts ex_opts;
  auto* ex = app.add_subcommand(
      "export", "Dump boundary polylines or scan results as CSV/JSON");
  ex->add_option("--what", ex_opts.what,
                 "boundary, admissibility, or janowski-scan")
      ->required();
  ex->add_option("--format", ex_opts.format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  ex->add_option("--out", ex_opts.out,
                 "Output path or directory (default: stdout)");
  ex->add_option("--dom", ex_opts.dom, "Domain name (boundary export)");
  ex->add_option("--dom-params", ex_opts.dom_params, "Domain parameters")
      ->delimiter(',');
  ex->add_option("--n", ex_opts.n, "Boundary resolution (boundary export)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ex->add_option("--case", ex_opts.case_name,
                 "Admissibility case (admissibility export)");
  ex->add_option("--omega", ex_opts.omega, "Exclusion-set domain name");
  ex->add_option("--omega-params", ex_opts.omega_params,
                 "Exclusion-set parameters")
      ->delimiter(',');
  ex->add_option("--theta-n", ex_opts.theta_n, "Boundary-angle resolution")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ex->add_option("--m-max", ex_opts.m_max, "Upper end of the m sweep")
      ->capture_default_str();
  ex->add_option("--k-max", ex_opts.k_max, "Ring-condition grid top")
      ->capture_default_str();
  ex->callback([&] { runner = [&] { return run_export(ex_opts); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return runner ? runner() : 2;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Config || e.kind() == ErrorKind::DomainParam
               ? 2
               : 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
