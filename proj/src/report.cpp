#include "subordkit/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <utility>

#include "subordkit/apps.hpp"
#include "subordkit/errors.hpp"
#include "subordkit/janowski.hpp"
#include "subordkit/parallel.hpp"

namespace subordkit {

namespace {

using nlohmann::ordered_json;

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string case_id(int criterion, const std::string& name) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "c%02d.", criterion);
  return buf + name;
}

/// Case whose verdict is |actual - expected| <= tol; margin is the slack.
CaseResult tolerance_case(std::string id, ordered_json inputs, double expected,
                          Provenance prov, double actual, double tol) {
  CaseResult c;
  c.id = std::move(id);
  c.inputs = std::move(inputs);
  c.expected_value = expected;
  c.provenance = prov;
  c.actual = actual;
  c.margin = tol - std::abs(actual - expected);
  c.pass = c.margin >= 0.0;
  return c;
}

/// Case whose verdict is a precomputed signed margin (>= 0 passes).
CaseResult margin_case(std::string id, ordered_json inputs,
                       ordered_json expected, Provenance prov,
                       ordered_json actual, double margin) {
  CaseResult c;
  c.id = std::move(id);
  c.inputs = std::move(inputs);
  c.expected_value = std::move(expected);
  c.provenance = prov;
  c.actual = std::move(actual);
  c.margin = margin;
  c.pass = margin >= 0.0;
  return c;
}

void finish(CriterionResult& r, const Stopwatch& clock) {
  r.elapsed_seconds = clock.seconds();
  r.budget_seconds = criterion_budget_seconds(r.index);
  r.cases_pass = std::all_of(r.cases.begin(), r.cases.end(),
                             [](const CaseResult& c) { return c.pass; });
}

std::size_t count_passes(const CriterionResult& r) {
  return static_cast<std::size_t>(
      std::count_if(r.cases.begin(), r.cases.end(),
                    [](const CaseResult& c) { return c.pass; }));
}

std::string ratio_summary(const CriterionResult& r, const char* what) {
  std::ostringstream out;
  out << count_passes(r) << "/" << r.cases.size() << " " << what;
  return out.str();
}

// ---------------------------------------------------------------------------
// 1. Closed-form boundary constants of the worked admissibility examples.

CriterionResult criterion_constants(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 1;
  r.title = "closed-form constants";

  const double e = std::numbers::e;
  const double tol = 1e-9;

  r.cases.push_back(tolerance_case(
      case_id(1, "exp-g"), {{"case", "exp"}, {"theta", 0.0}, {"m", 1.0}},
      4.0 * e / 3.0, Provenance::Paper, example_g(AdmissCase::Exp, 0.0, 1.0),
      tol));
  r.cases.push_back(tolerance_case(
      case_id(1, "sqrt-g"), {{"case", "sqrt"}, {"theta", 0.0}, {"m", 1.0}},
      10.0 * std::sqrt(2.0) / 9.0, Provenance::Paper,
      example_g(AdmissCase::Sqrt, 0.0, 1.0), tol));
  r.cases.push_back(tolerance_case(
      case_id(1, "sigmoid-g"),
      {{"case", "sigmoid"}, {"theta", 0.0}, {"m", 1.0}},
      4.0 * e * (2.0 + e) / ((1.0 + e) * (3.0 + 2.0 * e)), Provenance::Paper,
      example_g(AdmissCase::Sigmoid, 0.0, 1.0), tol));

  // Independent 1-D boundary scan for the sigmoid Re-supremum.
  const std::size_t scan_n = cfg.quick ? 10000 : 100000;
  const AnalyticMap& map = TargetDomain::sigmoid_dom().map();
  double re_max = -1e308;
  for (std::size_t k = 0; k < scan_n; ++k) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(k) /
        static_cast<double>(scan_n);
    re_max = std::max(re_max, map.value(std::polar(1.0, theta)).real());
  }
  r.cases.push_back(tolerance_case(
      case_id(1, "sigmoid-re-sup"),
      {{"case", "sigmoid"}, {"scan_points", scan_n}},
      2.0 * e / (1.0 + e), Provenance::Paper, re_max, 1e-8));

  finish(r, clock);
  r.summary = ratio_summary(r, "constants within tolerance");
  return r;
}

// ---------------------------------------------------------------------------
// 2. The validated spiral parameter quadruple, in exact rationals.

CriterionResult criterion_tuple(const SuiteConfig&) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 2;
  r.title = "validated parameter tuple";

  const JanowskiQuad q(Rational(3, 8), Rational(0), Rational(1),
                       Rational(123, 128));
  const ordered_json quad_inputs = {
      {"a", "3/8"}, {"b", "0"}, {"d", "1"}, {"e", "123/128"}};
  const ConditionReport cond = check_conditions(q);

  r.cases.push_back(margin_case(
      case_id(2, "cond3"), quad_inputs, true, Provenance::Paper, cond.cond3,
      cond.cond3 ? rational_to_double(cond.cond3_margin) : -1.0));

  std::size_t cond2_holds = 0;
  for (const auto& entry : cond.cond2_by_k) cond2_holds += entry.second ? 1 : 0;
  ordered_json cond2_actual;
  cond2_actual["holds_at"] = cond2_holds;
  cond2_actual["of"] = cond.cond2_by_k.size();
  cond2_actual["asymptote_sign"] = cond.cond2_asymptote_sign;
  r.cases.push_back(margin_case(case_id(2, "cond2-k1-100"), quad_inputs, true,
                                Provenance::Paper, cond2_actual,
                                cond.cond2_all ? 0.0 : -1.0));

  r.cases.push_back(margin_case(
      case_id(2, "cond4"), quad_inputs, true, Provenance::Paper,
      format_rational(cond.cond4_margin),
      cond.cond4 ? rational_to_double(cond.cond4_margin) : -1.0));

  const BoundResult bound = final_bound(q);
  ordered_json bound_actual;
  bound_actual["applicable"] = bound.applicable;
  bound_actual["value"] =
      bound.applicable ? format_rational(bound.value) : "";
  bound_actual["float"] =
      bound.applicable ? rational_to_double(bound.value) : 0.0;
  r.cases.push_back(margin_case(
      case_id(2, "final-bound"), quad_inputs, "3072/3071",
      Provenance::Derived, bound_actual,
      bound.applicable ? rational_to_double(bound.value) - 1.0 : -1.0));

  finish(r, clock);
  r.summary = ratio_summary(r, "exact conditions hold") +
              (bound.applicable
                   ? ", bound " + format_float(rational_to_double(bound.value))
                   : "");
  return r;
}

// ---------------------------------------------------------------------------
// 3. Quadratic-minimum formula against a dense brute-force grid.

/// Grid minimum of a t^2 + b t + c over the precomputed t (and t^2) arrays.
/// Four independent accumulators keep the reduction out of a single
/// dependency chain so the loop vectorizes.
double brute_quad_min(const std::vector<double>& t,
                      const std::vector<double>& t2, double a, double b,
                      double c) {
  const std::size_t n = t.size();
  double m0 = a * t2[0] + b * t[0];
  double m1 = m0, m2 = m0, m3 = m0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double v0 = a * t2[i] + b * t[i];
    const double v1 = a * t2[i + 1] + b * t[i + 1];
    const double v2 = a * t2[i + 2] + b * t[i + 2];
    const double v3 = a * t2[i + 3] + b * t[i + 3];
    m0 = v0 < m0 ? v0 : m0;
    m1 = v1 < m1 ? v1 : m1;
    m2 = v2 < m2 ? v2 : m2;
    m3 = v3 < m3 ? v3 : m3;
  }
  for (; i < n; ++i) {
    const double v = a * t2[i] + b * t[i];
    m0 = v < m0 ? v : m0;
  }
  const double lo = std::min(std::min(m0, m1), std::min(m2, m3));
  return lo + c;
}

CriterionResult criterion_min_quad(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 3;
  r.title = "quadratic minimum oracle";

  const std::size_t grid_n = 100000;
  std::vector<double> t(grid_n), t2(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    t[i] = -1.0 + 2.0 * static_cast<double>(i) /
                      static_cast<double>(grid_n - 1);
    t2[i] = t[i] * t[i];
  }

  const std::size_t triples = cfg.quick ? 10000 : 1000000;
  SplitMix64 rng(substream_seed(cfg.seed, 3));
  double worst = 0.0;
  double worst_a = 0.0, worst_b = 0.0, worst_c = 0.0;
  for (std::size_t kk = 0; kk < triples; ++kk) {
    const double a = rng.uniform(-10.0, 10.0);
    const double b = rng.uniform(-10.0, 10.0);
    const double c = rng.uniform(-10.0, 10.0);
    const double diff = std::abs(brute_quad_min(t, t2, a, b, c) -
                                 min_quad(a, b, c));
    if (diff > worst) {
      worst = diff;
      worst_a = a;
      worst_b = b;
      worst_c = c;
    }
  }

  ordered_json actual;
  actual["worst_abs_diff"] = worst;
  actual["worst_triple"] = {worst_a, worst_b, worst_c};
  r.cases.push_back(margin_case(
      case_id(3, "min-quad-brute"),
      {{"triples", triples}, {"grid_points", grid_n}, {"range", 10.0}}, 0.0,
      Provenance::Derived, actual, 1e-9 - worst));

  finish(r, clock);
  r.summary = "worst |formula - brute| = " + format_float(worst) + " over " +
              std::to_string(triples) + " triples";
  return r;
}

// ---------------------------------------------------------------------------
// 4. Modulus expansions and the directly assembled boundary ratio.

Rational lattice_rational(SplitMix64& rng, int denom) {
  const int num =
      static_cast<int>(rng.next() % (2 * denom + 1)) - denom;
  return Rational(num, denom);
}

JanowskiQuad random_quad(SplitMix64& rng) {
  for (;;) {
    const Rational a = lattice_rational(rng, 32);
    const Rational b = lattice_rational(rng, 32);
    const Rational d = lattice_rational(rng, 32);
    const Rational e = lattice_rational(rng, 32);
    if (JanowskiQuad::valid(a, b, d, e)) return JanowskiQuad(a, b, d, e);
  }
}

/// Proof-side oracle: |(P-1)/(D-EP)| assembled from w on the unit circle
/// with z w'(z) = k w, independent of the cos-polynomial expansions.
double assembled_ratio(const JanowskiQuad& q, double k, double theta) {
  const double a = rational_to_double(q.a);
  const double b = rational_to_double(q.b);
  const double d = rational_to_double(q.d);
  const double e = rational_to_double(q.e);
  const Complex w = std::polar(1.0, theta);
  const Complex one_a = 1.0 + a * w;
  const Complex one_b = 1.0 + b * w;
  const Complex zwp = k * w;
  const Complex num =
      2.0 * w * one_a * one_b + (1.0 + 2.0 * a * w - b * w) * zwp;
  const Complex phi1 = e * one_a - d * one_b;
  const Complex phi2 = 2.0 * e * one_a - d * one_b;
  const Complex den = 2.0 * one_a * one_b * phi1 + (a - b) * phi2 * zwp;
  return (a - b) * std::abs(num) / std::abs(den);
}

CriterionResult criterion_expansion(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 4;
  r.title = "modulus expansion oracle";

  const std::size_t points = cfg.quick ? 100 : 1000;
  SplitMix64 rng(substream_seed(cfg.seed, 4));

  double worst_expansion = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const JanowskiQuad q = random_quad(rng);
    const double k = rng.uniform(1.0, 30.0);
    const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const auto c = spiral_coeffs_f(q, k);
    const Complex w = std::polar(1.0, theta);
    const double quad_direct = std::norm(c.l + c.m * w + c.n * w * w);
    const double cubic_direct =
        std::norm(c.g + c.h * w + c.i * w * w + c.j * w * w * w);
    worst_expansion = std::max(
        worst_expansion,
        std::abs(modulus_sq_quadratic(c.l, c.m, c.n, theta) - quad_direct));
    worst_expansion = std::max(
        worst_expansion,
        std::abs(modulus_sq_cubic(c.g, c.h, c.i, c.j, theta) - cubic_direct));
  }
  r.cases.push_back(margin_case(
      case_id(4, "modulus-expansions"),
      {{"points", points}, {"k_range", {1.0, 30.0}}}, 0.0,
      Provenance::Derived, worst_expansion, 1e-10 - worst_expansion));

  double worst_ratio = 0.0;
  std::size_t compared = 0;
  while (compared < points) {
    const JanowskiQuad q = random_quad(rng);
    const double k = rng.uniform(1.0, 30.0);
    const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const auto c = spiral_coeffs_f(q, k);
    if (modulus_sq_cubic(c.g, c.h, c.i, c.j, theta) < 1e-12) continue;
    worst_ratio =
        std::max(worst_ratio, std::abs(boundary_ratio(q, k, theta) -
                                       assembled_ratio(q, k, theta)));
    ++compared;
  }
  r.cases.push_back(margin_case(
      case_id(4, "assembled-ratio"),
      {{"points", points}, {"k_range", {1.0, 30.0}}}, 0.0,
      Provenance::Derived, worst_ratio, 1e-9 - worst_ratio));

  finish(r, clock);
  r.summary = "expansion residual " + format_float(worst_expansion) +
              ", ratio residual " + format_float(worst_ratio);
  return r;
}

// ---------------------------------------------------------------------------
// 5. Regional threshold oracle over the case-coverage design.

std::string endpoint_name(EndpointCase which) {
  return which == EndpointCase::E0 ? "E0" : "E1";
}

CriterionResult criterion_regional(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 5;
  r.title = "regional threshold oracle";

  const RegionGrid grid =
      cfg.quick ? RegionGrid{100, 100, 1e-3, 10.0, -50.0} : RegionGrid{};
  double worst = -1e308;
  std::string worst_id;
  for (const auto& [alpha, rho] : case_coverage_design()) {
    for (const EndpointCase which : {EndpointCase::E0, EndpointCase::E1}) {
      const RegionalReport rep = regional_oracle(alpha, rho, which, grid);
      char name[64];
      std::snprintf(name, sizeof(name), "a%.2f-r%.2f-%s", alpha, rho,
                    endpoint_name(which).c_str());
      ordered_json inputs;
      inputs["alpha"] = alpha;
      inputs["rho"] = rho;
      inputs["endpoint"] = endpoint_name(which);
      inputs["x_count"] = grid.x_count;
      inputs["my_count"] = grid.my_count;
      ordered_json actual;
      actual["worst_margin"] = rep.worst_margin;
      actual["worst_x"] = rep.worst_point.x;
      actual["worst_my"] = rep.worst_point.my;
      actual["samples"] = rep.samples;
      actual["cells"] = rep.cells.size();
      actual["boundary_ties"] = rep.boundary_ties;
      r.cases.push_back(margin_case(case_id(5, name), std::move(inputs), 0.0,
                                    Provenance::Derived, std::move(actual),
                                    1e-9 - rep.worst_margin));
      if (rep.worst_margin > worst) {
        worst = rep.worst_margin;
        worst_id = name;
      }
    }
  }

  finish(r, clock);
  r.summary = ratio_summary(r, "regional scans certified") + "; worst " +
              format_float(worst) + " at " + worst_id;
  return r;
}

// ---------------------------------------------------------------------------
// 6. Operator reductions and the structural mean identity.

CriterionResult criterion_identities(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 6;
  r.title = "operator identities";

  const std::size_t points = cfg.quick ? 1000 : 10000;
  const double tol = 1e-12;
  SplitMix64 rng(substream_seed(cfg.seed, 6));

  const ThetaPhiPair generic(AnalyticMap::affine(1.0, 0.5),
                             AnalyticMap::constant(0.25));
  const AnalyticMap f = AnalyticMap::exp_map();

  double worst_t0 = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const Complex z = rng.in_disk(0.999);
    worst_t0 = std::max(worst_t0, std::abs(h_operator(generic, f, 0.0, z).value -
                                           f.eval(z).f));
  }
  r.cases.push_back(margin_case(case_id(6, "reduce-t0"), {{"points", points}},
                                0.0, Provenance::Trivial, worst_t0,
                                tol - worst_t0));

  double worst_half = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const Complex z = rng.in_disk(0.999);
    const Jet j = f.eval(z);
    const Complex p = j.f;
    const Complex p1 = j.f + z * j.df;
    const Complex expected = 2.0 * p * p1 / (2.0 * p + z * j.df);
    worst_half = std::max(
        worst_half,
        std::abs(h_operator(ThetaPhiPair::ones(), f, 0.5, z).value - expected));
  }
  r.cases.push_back(margin_case(case_id(6, "reduce-thalf"),
                                {{"points", points}}, 0.0, Provenance::Trivial,
                                worst_half, tol - worst_half));

  double worst_zero = 0.0;
  const AnalyticMap zero = AnalyticMap::constant(0.0);
  for (std::size_t i = 0; i < points; ++i) {
    const Complex z = rng.in_disk(0.999);
    worst_zero =
        std::max(worst_zero, std::abs(h_operator(generic, zero, 0.3, z).value));
  }
  r.cases.push_back(margin_case(case_id(6, "zero-map"), {{"points", points}},
                                0.0, Provenance::Trivial, worst_zero,
                                tol - worst_zero));

  double worst_identity = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const Complex z = rng.in_disk(0.999);
    const double t = rng.uniform01();
    const Complex lhs = p_operator(generic, f, 1.0 - t, z);
    const Complex rhs = t * p_operator(generic, f, 0.0, z) +
                        (1.0 - t) * p_operator(generic, f, 1.0, z);
    worst_identity = std::max(worst_identity, std::abs(lhs - rhs));
  }
  r.cases.push_back(margin_case(case_id(6, "mean-identity"),
                                {{"points", points}}, 0.0, Provenance::Trivial,
                                worst_identity, tol - worst_identity));

  finish(r, clock);
  r.summary = ratio_summary(r, "identities within 1e-12");
  return r;
}

// ---------------------------------------------------------------------------
// 7. Falsification sweeps over premise-holding random candidates.

CriterionResult criterion_falsify(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 7;
  r.title = "falsification suites";

  const std::size_t budget = cfg.quick ? 500 : 10000;
  const ThetaPhiPair exp_pair(AnalyticMap::affine(1.0, 0.5),
                              AnalyticMap::constant(5.0));
  const TargetDomain exp_dom = TargetDomain::exp_dom();

  // The transcendental configuration must clear the admissibility margin
  // before its falsification run counts.
  const double gate = hypo_check(exp_pair, exp_dom);
  r.cases.push_back(margin_case(
      case_id(7, "hypo-gate-exp"),
      {{"theta", "1 + z/2"}, {"phi", 5.0}, {"dom", "exp"}}, 0.0,
      Provenance::Derived, gate, gate));

  struct Config {
    const char* name;
    ThetaPhiPair pair;
    double t;
    TargetDomain dom;
  };
  const std::vector<Config> configs = {
      {"halfplane-t0.5", ThetaPhiPair::ones(), 0.5,
       TargetDomain::halfplane(0.0)},
      {"janowski-t1", ThetaPhiPair::ones(), 1.0,
       TargetDomain::janowski(0.5, -0.5)},
      {"exp-t0.5", exp_pair, 0.5, exp_dom},
  };

  std::size_t stream = 71;
  for (const Config& c : configs) {
    const FalsifyResult res = falsify_lemma(
        c.pair, c.t, c.dom, budget, substream_seed(cfg.seed, stream++));
    ordered_json inputs;
    inputs["t"] = c.t;
    inputs["dom"] = c.dom.name();
    inputs["budget"] = budget;
    ordered_json actual;
    actual["attempts"] = res.attempts;
    actual["premise_holding"] = res.premise_holding;
    actual["excluded"] = res.excluded;
    actual["counterexamples"] = res.counterexamples.size();
    r.cases.push_back(margin_case(
        case_id(7, c.name), std::move(inputs), 0.0, Provenance::Derived,
        std::move(actual),
        res.counterexamples.empty() ? 0.0
                                    : -static_cast<double>(
                                          res.counterexamples.size())));
  }

  finish(r, clock);
  r.summary = ratio_summary(r, "configs clean") + " at budget " +
              std::to_string(budget);
  return r;
}

// ---------------------------------------------------------------------------
// 8. Classical ratio bounds on the convex catalog targets.

CriterionResult criterion_convex_bounds(const SuiteConfig&) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 8;
  r.title = "convex boundary bounds";

  const double slack = 1e-9;
  struct Entry {
    const char* name;
    TargetDomain dom;
  };
  const std::vector<Entry> entries = {
      {"halfplane", TargetDomain::halfplane(0.0)},
      {"janowski", TargetDomain::janowski(0.5, -0.5)},
      {"exp", TargetDomain::exp_dom()},
      {"sqrt", TargetDomain::sqrt_dom()},
      {"sigmoid", TargetDomain::sigmoid_dom()},
      {"power", TargetDomain::power_dom(0.5)},
  };

  for (const Entry& entry : entries) {
    const MarxReport rep = marx_strohhacker_check(entry.dom);
    ordered_json inputs;
    inputs["dom"] = entry.dom.name();
    inputs["n"] = 1024;
    ordered_json actual;
    actual["ratio_shifted_max"] = rep.ratio_shifted_max;
    actual["dprime_min"] = rep.dprime_min;
    actual["ratio_full_max"] = rep.ratio_full_max;
    actual["excluded"] = rep.excluded;
    const double margin = std::min(
        {1.0 + slack - rep.ratio_shifted_max, rep.dprime_min - 0.25 + slack,
         5.0 + slack - rep.ratio_full_max});
    ordered_json expected;
    expected["ratio_shifted_max"] = 1.0;
    expected["dprime_min"] = 0.25;
    expected["ratio_full_max"] = 5.0;
    r.cases.push_back(margin_case(case_id(8, entry.name), std::move(inputs),
                                  std::move(expected), Provenance::Paper,
                                  std::move(actual), margin));
  }

  finish(r, clock);
  r.summary = ratio_summary(r, "convex targets within the ratio bounds");
  return r;
}

// ---------------------------------------------------------------------------
// 9. Analytic derivatives against finite differences, per constructor.

CriterionResult criterion_derivatives(const SuiteConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  r.index = 9;
  r.title = "derivative consistency";

  const std::size_t points = cfg.quick ? 100 : 1000;
  struct Entry {
    const char* name;
    AnalyticMap map;
    double radius;
  };
  const AnalyticMap z = AnalyticMap::identity();
  const std::vector<Entry> catalog = {
      {"constant", AnalyticMap::constant(Complex(1.5, -0.5)), 0.95},
      {"identity", z, 0.95},
      {"affine", AnalyticMap::affine(Complex(0.5, 0.25), Complex(-1.0, 0.5)),
       0.95},
      {"moebius", AnalyticMap::moebius(Complex(0.8, 0.1), Complex(-0.4, 0.2)),
       0.9},
      {"exp", AnalyticMap::exp_map(), 0.95},
      {"sqrt1p", AnalyticMap::sqrt1p(AnalyticMap::scale(z, Complex(0.9))),
       0.9},
      {"power",
       AnalyticMap::power(
           AnalyticMap::scale(AnalyticMap::moebius(1.0, -1.0), Complex(0.6)),
           0.5),
       0.9},
      {"sigmoid", AnalyticMap::sigmoid(), 0.95},
      {"sine1p", AnalyticMap::sine1p(), 0.95},
      {"crescent", AnalyticMap::crescent(AnalyticMap::scale(z, Complex(0.9))),
       0.9},
      {"polynomial",
       AnalyticMap::polynomial({Complex(1.0), Complex(0.5, 1.0),
                                Complex(-0.25), Complex(0.0, 0.125)}),
       0.95},
      {"sum",
       AnalyticMap::sum(AnalyticMap::exp_map(),
                        AnalyticMap::polynomial({1.0, 2.0, 1.0})),
       0.95},
      {"product",
       AnalyticMap::product(AnalyticMap::sine1p(),
                            AnalyticMap::affine(1.0, 0.5)),
       0.95},
      {"quotient",
       AnalyticMap::quotient(AnalyticMap::polynomial({1.0, 1.0}),
                             AnalyticMap::affine(1.0, Complex(0.5, 0.25))),
       0.9},
      {"scale", AnalyticMap::scale(AnalyticMap::exp_map(), Complex(0.5, 0.5)),
       0.95},
  };

  SplitMix64 rng(substream_seed(cfg.seed, 9));
  for (const Entry& entry : catalog) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const Complex at = rng.in_disk(entry.radius - 1e-4);
      worst = std::max(worst, fd_residual(entry.map, at, 1e-5));
    }
    r.cases.push_back(margin_case(
        case_id(9, entry.name),
        {{"points", points}, {"radius", entry.radius}, {"step", 1e-5}}, 0.0,
        Provenance::Derived, worst, 1e-6 - worst));
  }

  finish(r, clock);
  r.summary = ratio_summary(r, "constructors pass the residual bound");
  return r;
}

}  // namespace

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Trivial: return "trivial";
    case Provenance::Derived: return "derived";
  }
  return "unknown";
}

double criterion_budget_seconds(int index) {
  switch (index) {
    case 1: return 1.0;
    case 2: return 1.0;
    case 3: return 60.0;
    case 5: return 300.0;
    case 7: return 600.0;
    default: return 0.0;
  }
}

CriterionResult run_criterion(int index, const SuiteConfig& cfg) {
  switch (index) {
    case 1: return criterion_constants(cfg);
    case 2: return criterion_tuple(cfg);
    case 3: return criterion_min_quad(cfg);
    case 4: return criterion_expansion(cfg);
    case 5: return criterion_regional(cfg);
    case 6: return criterion_identities(cfg);
    case 7: return criterion_falsify(cfg);
    case 8: return criterion_convex_bounds(cfg);
    case 9: return criterion_derivatives(cfg);
    default:
      throw EvalError(ErrorKind::Config,
                      "criterion index must be in [1, 9]");
  }
}

std::vector<CriterionResult> run_suite(const SuiteConfig& cfg,
                                       std::vector<int> indices) {
  if (indices.empty())
    for (int i = 1; i <= kCriterionCount; ++i) indices.push_back(i);
  for (const int index : indices)
    if (index < 1 || index > kCriterionCount)
      throw EvalError(ErrorKind::Config,
                      "criterion index must be in [1, 9]");

  std::vector<CriterionResult> results(indices.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= indices.size()) break;
      try {
        results[slot] = run_criterion(indices[slot], cfg);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::min(static_cast<std::size_t>(thread_count()), indices.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t i = 0; i + 1 < workers; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

nlohmann::ordered_json report_json(const std::vector<CriterionResult>& results,
                                   const SuiteConfig& cfg) {
  ordered_json doc;
  doc["suite"] = "verify-paper";

  ordered_json cases = ordered_json::array();
  for (const CriterionResult& r : results) {
    for (const CaseResult& c : r.cases) {
      ordered_json entry;
      entry["id"] = c.id;
      entry["inputs"] = c.inputs;
      entry["expected"] = {{"value", c.expected_value},
                           {"provenance", to_string(c.provenance)}};
      entry["actual"] = c.actual;
      entry["margin"] = c.margin;
      entry["verdict"] = c.pass ? "pass" : "fail";
      cases.push_back(std::move(entry));
    }
  }
  doc["cases"] = std::move(cases);

  const bool quick = cfg.quick;
  ordered_json grids;
  grids["disk_radii"] = {0.5, 0.9, 0.99, 0.999};
  grids["disk_angular_count"] = 1024;
  grids["hypo_angular_count"] = 256;
  grids["boundary_count"] = 1024;
  grids["region_x_count"] = quick ? 100 : 400;
  grids["region_my_count"] = quick ? 100 : 400;
  grids["min_quad_grid"] = 100000;
  grids["re_sup_scan"] = quick ? 10000 : 100000;
  ordered_json samples;
  samples["min_quad_triples"] = quick ? 10000 : 1000000;
  samples["expansion_points"] = quick ? 100 : 1000;
  samples["identity_points"] = quick ? 1000 : 10000;
  samples["falsify_budget"] = quick ? 500 : 10000;
  samples["fd_points"] = quick ? 100 : 1000;
  ordered_json tolerances;
  tolerances["constants"] = 1e-9;
  tolerances["re_sup"] = 1e-8;
  tolerances["min_quad"] = 1e-9;
  tolerances["expansion"] = 1e-10;
  tolerances["ratio"] = 1e-9;
  tolerances["regional"] = 1e-9;
  tolerances["identities"] = 1e-12;
  tolerances["convex_slack"] = 1e-9;
  tolerances["fd"] = 1e-6;
  ordered_json environment;
  environment["grids"] = std::move(grids);
  environment["samples"] = std::move(samples);
  environment["tolerances"] = std::move(tolerances);
  environment["seed"] = cfg.seed;
  environment["budget"] = quick ? "quick" : "full";
  doc["environment"] = std::move(environment);
  return doc;
}

std::string serialize_report(const nlohmann::ordered_json& doc) {
  return doc.dump(2) + "\n";
}

std::string criterion_line(const CriterionResult& r) {
  char timing[96];
  if (r.budget_seconds > 0.0) {
    std::snprintf(timing, sizeof(timing), " (%.2f s of %.0f s budget%s)",
                  r.elapsed_seconds, r.budget_seconds,
                  r.within_budget() ? "" : ", EXCEEDED");
  } else {
    std::snprintf(timing, sizeof(timing), " (%.2f s)", r.elapsed_seconds);
  }
  std::ostringstream out;
  out << "CRITERION " << r.index << ": " << (r.pass() ? "PASS" : "FAIL")
      << " — " << r.summary << timing;
  return out.str();
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_float(z.real());
  const std::string im = format_float(std::abs(z.imag()));
  return format_float(z.real()) + (z.imag() < 0.0 ? "-" : "+") + im + "i";
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string admissibility_csv(const std::vector<ScanEntry>& entries) {
  std::string out = csv_line({"theta", "m", "re", "im", "verdict"});
  for (const ScanEntry& e : entries)
    out += csv_line({format_float(e.theta), format_float(e.m),
                     format_float(e.psi.real()), format_float(e.psi.imag()),
                     to_string(e.verdict)});
  return out;
}

std::vector<BoundarySample> sample_domain_boundary(const TargetDomain& dom,
                                                   std::size_t n) {
  if (n < 4)
    throw EvalError(ErrorKind::Config,
                    "boundary resolution must be at least 4");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<BoundarySample> samples;
  samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = two_pi * static_cast<double>(k) /
                         static_cast<double>(n);
    bool corner = false;
    for (const double c : dom.corner_params()) {
      double d = std::fmod(std::abs(theta - c), two_pi);
      d = std::min(d, two_pi - d);
      if (d <= 1e-9) {
        corner = true;
        break;
      }
    }
    if (corner) continue;
    samples.push_back({theta, dom.map().value(std::polar(1.0, theta))});
  }
  return samples;
}

std::string boundary_csv(const std::vector<BoundarySample>& samples) {
  std::string out = csv_line({"theta", "re", "im"});
  for (const BoundarySample& s : samples)
    out += csv_line({format_float(s.theta), format_float(s.value.real()),
                     format_float(s.value.imag())});
  return out;
}

Complex parse_complex(const std::string& text) {
  const auto parse_part = [](const std::string& part) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &used);
    } catch (const std::exception&) {
      throw EvalError(ErrorKind::Config, "malformed number: " + part);
    }
    if (used != part.size())
      throw EvalError(ErrorKind::Config, "malformed number: " + part);
    return value;
  };
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_part(text), 0.0);
  if (text.find(',', comma + 1) != std::string::npos)
    throw EvalError(ErrorKind::Config, "expected \"re\" or \"re,im\"");
  return Complex(parse_part(text.substr(0, comma)),
                 parse_part(text.substr(comma + 1)));
}

std::uint64_t parse_seed(const std::string& text) {
  const bool hex = text.size() > 2 && text[0] == '0' &&
                   (text[1] == 'x' || text[1] == 'X');
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(hex ? text.substr(2) : text, &used, hex ? 16 : 10);
  } catch (const std::exception&) {
    throw EvalError(ErrorKind::Config, "malformed seed: " + text);
  }
  if (used != (hex ? text.size() - 2 : text.size()))
    throw EvalError(ErrorKind::Config, "malformed seed: " + text);
  return value;
}

AnalyticMap load_map_argument(const std::string& text) {
  nlohmann::json spec;
  if (!text.empty() && text.front() == '{') {
    try {
      spec = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw EvalError(ErrorKind::Config,
                      std::string("invalid expression JSON: ") + e.what());
    }
  } else {
    std::ifstream in(text);
    if (!in)
      throw EvalError(ErrorKind::Config,
                      "cannot open expression file: " + text);
    try {
      in >> spec;
    } catch (const nlohmann::json::exception& e) {
      throw EvalError(ErrorKind::Config,
                      std::string("invalid expression JSON: ") + e.what());
    }
  }
  return AnalyticMap::from_json(spec);
}

}  // namespace subordkit
