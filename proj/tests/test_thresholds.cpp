#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "subordkit/errors.hpp"
#include "subordkit/rational.hpp"
#include "subordkit/rng.hpp"
#include "subordkit/thresholds.hpp"

using subordkit::beta0;
using subordkit::beta1;
using subordkit::beta_at;
using subordkit::boundary_my_bound;
using subordkit::BoundaryPoint;
using subordkit::case_flags;
using subordkit::CaseFlags;
using subordkit::combined_threshold;
using subordkit::default_delta_grid;
using subordkit::EndpointCase;
using subordkit::ErrorKind;
using subordkit::EvalError;
using subordkit::Rational;
using subordkit::rational_to_double;
using subordkit::re_E0;
using subordkit::re_E0_assembled;
using subordkit::re_E0_exact;
using subordkit::re_E1;
using subordkit::re_E1_assembled;
using subordkit::re_E1_exact;
using subordkit::reachable_cases;
using subordkit::regional_oracle;
using subordkit::RegionalReport;
using subordkit::RegionGrid;
using subordkit::SpiralReport;
using subordkit::spiral_re_check;
using subordkit::SplitMix64;
using subordkit::threshold_sup;
using subordkit::ThresholdParams;

namespace {

ErrorKind thrown_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("expected EvalError");
  return ErrorKind::Runtime;
}

bool has_cell(const std::vector<CaseFlags>& cells, const CaseFlags& want) {
  return std::find(cells.begin(), cells.end(), want) != cells.end();
}

}  // namespace

TEST_SUITE("thresholds") {

TEST_CASE("parameter bundle validates ranges and the alpha-rho coupling") {
  CHECK_NOTHROW(ThresholdParams(0.5, 0.25, 0.5, 1.5, 0.5));
  CHECK_NOTHROW(ThresholdParams(0.0, 0.25, 0.0, 1.0, 0.375));  // coupling edge
  CHECK_NOTHROW(ThresholdParams(1.0, 0.75, 1.0, 2.0, 0.0));    // alpha > 1/2
  CHECK(thrown_kind([] { ThresholdParams(-0.1, 0.2, 0.5, 1.5, 0.9); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { ThresholdParams(0.5, 1.0, 0.5, 1.5, 0.9); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { ThresholdParams(0.5, 0.2, 1.5, 1.5, 0.9); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { ThresholdParams(0.5, 0.2, 0.5, 0.9, 0.9); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { ThresholdParams(0.5, 0.2, 0.5, 2.1, 0.9); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { ThresholdParams(0.5, 0.2, 0.5, 1.5, 1.1); }) ==
        ErrorKind::DomainParam);
  // rho below alpha(1+2 alpha) while alpha <= 1/2.
  CHECK(thrown_kind([] { ThresholdParams(0.5, 0.25, 0.5, 1.5, 0.3); }) ==
        ErrorKind::DomainParam);
}

TEST_CASE("slope bound and case flags match the defining inequalities") {
  // -(((1-a)^2 + x^2) / (2(1-a))) at a = 0.25, x = 0.5.
  CHECK(boundary_my_bound(0.25, 0.5) ==
        doctest::Approx(-0.8125 / 1.5).epsilon(1e-15));
  CHECK(thrown_kind([] { boundary_my_bound(0.25, 0.0); }) ==
        ErrorKind::DomainParam);

  // Any alpha <= 1/2 turns on the first flag.
  CHECK(case_flags(0.25, 0.5, {1.0, -3.0}).i1);
  CHECK(case_flags(0.5, 1.0, {1.0, -3.0}).i1);
  CHECK_FALSE(case_flags(0.75, 0.5, {1.0, -3.0}).i1);

  // With rho = 0 the second flag degenerates to alpha^2 > x^2.
  CHECK(case_flags(0.75, 0.0, {0.5, -1.0}).i2);
  CHECK_FALSE(case_flags(0.75, 0.0, {1.0, -1.0}).i2);

  // Mixed sample where both the second and fourth flags are off.
  const CaseFlags f = case_flags(0.75, 0.5, {1.0, -2.0});
  CHECK_FALSE(f.i2);  // 0.5625 - 1 - 1 < 0
  CHECK_FALSE(f.i4);  // 0.5625 + 1 - 1 > 0

  CHECK(thrown_kind([] { case_flags(0.75, 0.5, {0.0, -1.0}); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { case_flags(1.5, 0.5, {1.0, -1.0}); }) ==
        ErrorKind::DomainParam);
}

TEST_CASE("first-kind branch values at hand-checked parameters") {
  const CaseFlags first{true, false, false, false};
  // alpha = 0 annihilates the numerator whenever rho > 0.
  CHECK(beta0(0.0, 0.5, first) == 0.0);
  // 0.25 * 1.25 * 0.5 / (0.5*0.75 - 0.125) = 0.15625 / 0.25, all dyadic.
  CHECK(beta0(0.25, 0.5, first) == 0.625);
  // Second branch returns alpha itself.
  CHECK(beta0(0.75, 0.6, CaseFlags{false, true, false, false}) == 0.75);
  // Third and fourth branches add a positive correction above alpha.
  CHECK(beta0(0.75, 0.3, CaseFlags{false, false, true, false}) > 0.75);
  CHECK(beta0(0.75, 0.3, CaseFlags{false, false, false, false}) > 0.75);
  // Zero branch denominators are rejected, not silently divided.
  CHECK(thrown_kind([&] { beta0(0.5, 1.0, first); }) == ErrorKind::DomainParam);
  CHECK(thrown_kind([&] { beta0(0.0, 0.0, first); }) == ErrorKind::DomainParam);
}

TEST_CASE("second-kind branch values at hand-checked parameters") {
  // The fourth flag short-circuits to alpha for every branch family.
  CHECK(beta1(0.31, 0.77, CaseFlags{true, true, true, true}) == 0.31);
  // 0.25 + 2*0.25*0.25*0.5 / ((0.5-1.5)^2 * 0.25) = 0.25 + 0.0625/0.25.
  CHECK(beta1(0.25, 0.5, CaseFlags{true, false, false, false}) == 0.5);
  // rho = 0 kills every correction term exactly.
  CHECK(beta1(0.75, 0.0, CaseFlags{false, true, false, false}) == 0.75);
  CHECK(beta1(0.75, 0.0, CaseFlags{false, false, true, false}) == 0.75);
  CHECK(beta1(0.75, 0.0, CaseFlags{false, false, false, false}) == 0.75);
  CHECK(thrown_kind([] {
          beta1(0.5, 1.0, CaseFlags{true, false, false, false});
        }) == ErrorKind::DomainParam);
}

TEST_CASE("endpoint real parts: degenerations, asymptote, bound contact") {
  const BoundaryPoint pt{0.8, -3.0};
  // rho = 1 removes the first endpoint's correction; rho = 0 the second's.
  CHECK(re_E0(0.37, 1.0, pt) == 0.37);
  CHECK(re_E1(0.37, 0.0, pt) == 0.37);
  // alpha = 0 zeroes both.
  CHECK(re_E0(0.0, 0.5, pt) == 0.0);
  CHECK(re_E1(0.0, 0.5, pt) == 0.0);
  // my -> -infinity drives the first endpoint to alpha + (1-rho) alpha / rho.
  CHECK(re_E0(0.25, 0.5, {1.0, -1e8}) == doctest::Approx(0.5).epsilon(1e-5));
  // Contact point on the slope bound stays below its branch threshold.
  const double yb = boundary_my_bound(0.25, 0.5);
  const BoundaryPoint contact{0.5, yb};
  CHECK(re_E0(0.25, 0.5, contact) <=
        beta_at(0.25, 0.5, EndpointCase::E0, contact));
  CHECK(thrown_kind([] { re_E0(0.25, 0.5, {-1.0, -1.0}); }) ==
        ErrorKind::DomainParam);
}

TEST_CASE("exact rational endpoint formulas agree with the complex assembly") {
  SplitMix64 rng(subordkit::kDefaultSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational alpha(static_cast<int>(rng.next() % 31) + 1, 32);
    const Rational rho(static_cast<int>(rng.next() % 33), 32);
    const Rational x(static_cast<int>(rng.next() % 32) + 1, 16);
    const Rational my(-(static_cast<int>(rng.next() % 64) + 1), 8);
    CHECK(re_E0_exact(alpha, rho, x, my) ==
          re_E0_assembled(alpha, rho, x, my));
    CHECK(re_E1_exact(alpha, rho, x, my) ==
          re_E1_assembled(alpha, rho, x, my));
    // The double path tracks the exact value.
    const double a = rational_to_double(alpha);
    const double r = rational_to_double(rho);
    const BoundaryPoint pt{rational_to_double(x), rational_to_double(my)};
    const double e0 = rational_to_double(re_E0_exact(alpha, rho, x, my));
    const double e1 = rational_to_double(re_E1_exact(alpha, rho, x, my));
    CHECK(re_E0(a, r, pt) ==
          doctest::Approx(e0).epsilon(1e-12).scale(std::max(1.0, std::abs(e0))));
    CHECK(re_E1(a, r, pt) ==
          doctest::Approx(e1).epsilon(1e-12).scale(std::max(1.0, std::abs(e1))));
  }
  CHECK(thrown_kind([] {
          re_E0_exact(Rational(1, 4), Rational(1, 2), Rational(0), Rational(-1));
        }) == ErrorKind::DomainParam);
}

TEST_CASE("exact case-boundary ties evaluate both branches and keep the max") {
  // At alpha = 0.75, rho = 0.5, x = 0.75, my = 0 the second flag's quantity
  // is exactly zero, so the selection is ambiguous between branches 2 and 3.
  const BoundaryPoint tie_pt{0.75, 0.0};
  bool tie = false;
  const double v = beta_at(0.75, 0.5, EndpointCase::E0, tie_pt, &tie);
  CHECK(tie);
  const double off = beta0(0.75, 0.5, CaseFlags{false, false, true, false});
  const double on = beta0(0.75, 0.5, CaseFlags{false, true, true, false});
  CHECK(v == std::max(off, on));
  CHECK(v > 0.75);  // branch 3 dominates the plain alpha of branch 2

  // A generic point reports no tie and matches the plain branch value.
  const BoundaryPoint plain{1.0, -3.0};
  tie = true;
  const double w = beta_at(0.75, 0.5, EndpointCase::E1, plain, &tie);
  CHECK_FALSE(tie);
  CHECK(w == beta1(0.75, 0.5, case_flags(0.75, 0.5, plain)));
}

TEST_CASE("regional oracle certifies the small-alpha rows at full resolution") {
  // alpha = 0: both endpoint values and the branch value vanish identically.
  const RegionalReport zero = regional_oracle(0.0, 0.5, EndpointCase::E0);
  CHECK(zero.worst_margin == 0.0);
  CHECK(zero.samples == 159600);
  CHECK(zero.boundary_ties == 0);

  const RegionalReport e0 = regional_oracle(0.25, 0.5, EndpointCase::E0);
  CHECK(e0.worst_margin <= 1e-9);
  CHECK(e0.worst_margin ==
        doctest::Approx(-1.6055394099545595e-05).epsilon(1e-9));
  CHECK(e0.samples == 157200);
  CHECK(e0.cells.size() == 2);
  CHECK(has_cell(e0.cells, CaseFlags{true, false, true, true}));
  CHECK(has_cell(e0.cells, CaseFlags{true, false, true, false}));

  const RegionalReport e1 = regional_oracle(0.25, 0.5, EndpointCase::E1);
  CHECK(e1.worst_margin <= 1e-9);
  CHECK(e1.worst_margin ==
        doctest::Approx(-1.514994628895594e-05).epsilon(1e-9));

  // rho = 1 makes the first endpoint exactly alpha everywhere while the
  // second flag's branch is exactly alpha as well: margin zero on the nose.
  CHECK(regional_oracle(0.75, 1.0, EndpointCase::E0).worst_margin == 0.0);
}

TEST_CASE("regional oracle exposes the failing large-alpha rows honestly") {
  // These published branch values are refuted by brute force; the margins
  // are large and positive, concentrated at the small-x edge of the region.
  const RegionalReport f0 = regional_oracle(0.75, 0.3, EndpointCase::E0);
  CHECK(f0.worst_margin > 1.0);
  CHECK(f0.worst_margin ==
        doctest::Approx(27.858532215078963).epsilon(1e-9));
  CHECK(f0.worst_point.x ==
        doctest::Approx(0.0010232929922807535).epsilon(1e-12));
  CHECK(f0.worst_point.my ==
        doctest::Approx(-2.000002015525626).epsilon(1e-12));

  const RegionalReport f1 = regional_oracle(0.75, 0.3, EndpointCase::E1);
  CHECK(f1.worst_margin > 1.0);
  CHECK(f1.worst_margin ==
        doctest::Approx(10.455753996896421).epsilon(1e-9));

  CHECK(regional_oracle(0.75, 1.0, EndpointCase::E1).worst_margin ==
        doctest::Approx(5.8744597362287356).epsilon(1e-9));

  // Invalid parameterizations are rejected up front.
  CHECK(thrown_kind([] { regional_oracle(0.25, 0.3, EndpointCase::E0); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] {
          regional_oracle(0.25, 0.5, EndpointCase::E0, RegionGrid{400, 1});
        }) == ErrorKind::Config);
}

TEST_CASE("twelve-point design reaches every branch cell") {
  const std::vector<std::pair<double, double>> design = {
      {0.05, 0.20}, {0.25, 0.50}, {0.30, 0.60}, {0.40, 0.90},
      {0.45, 0.99}, {0.49, 0.99}, {0.35, 0.75}, {0.75, 0.00},
      {0.90, 0.00}, {0.75, 1.00}, {0.90, 1.00}, {0.75, 0.30},
  };
  bool cell1 = false, cell2 = false, cell3 = false, cell4 = false,
       fourth_flag = false;
  for (const auto& [a, r] : design) {
    for (const CaseFlags& c : reachable_cases(a, r)) {
      cell1 |= c.i1;
      cell2 |= !c.i1 && c.i2;
      cell3 |= !c.i1 && !c.i2 && c.i3;
      cell4 |= !c.i1 && !c.i2 && !c.i3;
      fourth_flag |= c.i4;
    }
  }
  CHECK(cell1);
  CHECK(cell2);
  CHECK(cell3);
  CHECK(cell4);
  CHECK(fourth_flag);
}

TEST_CASE("power transform never lifts the real part above alpha") {
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 0.9}) {
    const SpiralReport rep = spiral_re_check(alpha);
    CHECK(rep.worst_margin <= 1e-9);
  }
  // Exponent 1 is the identity: the margin collapses to rounding noise.
  CHECK(std::abs(spiral_re_check(0.25, {1.0}).worst_margin) <= 1e-12);
  // Exponent 2 lands on alpha^2 - x^2 - alpha exactly.
  const SpiralReport sq = spiral_re_check(0.9, {2.0});
  const double x0 = std::pow(10.0, -3.0 + 4.0 / 400.0);
  CHECK(sq.worst_margin ==
        doctest::Approx(0.81 - x0 * x0 - 0.9).epsilon(1e-12));
  CHECK(sq.worst_delta == 2.0);
  CHECK(default_delta_grid().size() == 11);
  CHECK(thrown_kind([] { spiral_re_check(0.25, {0.5}); }) == ErrorKind::Config);
  CHECK(thrown_kind([] { spiral_re_check(0.25, {}); }) == ErrorKind::Config);
}

TEST_CASE("combined threshold interpolates between alpha and the branch") {
  const ThresholdParams base(0.0, 0.25, 0.5, 1.5, 0.5);
  const BoundaryPoint pt{1.0, -3.0};
  const double branch = beta_at(0.25, 0.5, EndpointCase::E1, pt);
  CHECK(combined_threshold(ThresholdParams(1.0, 0.25, 0.5, 1.5, 0.5),
                           EndpointCase::E1, pt) == 0.25);
  CHECK(combined_threshold(base, EndpointCase::E1, pt) == branch);
  for (double g : {0.25, 0.5, 0.75}) {
    const ThresholdParams p(g, 0.25, 0.5, 1.5, 0.5);
    CHECK(combined_threshold(p, EndpointCase::E1, pt) ==
          g * 0.25 + (1.0 - g) * branch);
  }
}

TEST_CASE("hypothesis-level threshold takes the reachable-branch supremum") {
  CHECK(threshold_sup(ThresholdParams(0.0, 0.25, 1.0, 1.0, 0.5),
                      EndpointCase::E1) == 0.5);
  CHECK(threshold_sup(ThresholdParams(0.0, 0.25, 1.0, 1.0, 0.5),
                      EndpointCase::E0) == 0.625);
  CHECK(threshold_sup(ThresholdParams(0.5, 0.25, 1.0, 1.0, 0.5),
                      EndpointCase::E1) == 0.375);
  // Full weight on alpha sidesteps the branch table entirely, even where the
  // branch denominators degenerate.
  CHECK(threshold_sup(ThresholdParams(1.0, 0.5, 1.0, 1.0, 1.0),
                      EndpointCase::E1) == 0.5);
  // With any branch weight the degenerate corner (alpha, rho) = (0, 0) is
  // rejected rather than silently divided through.
  CHECK(thrown_kind([] {
          threshold_sup(ThresholdParams(0.0, 0.0, 1.0, 1.0, 0.0),
                        EndpointCase::E1);
        }) == ErrorKind::DomainParam);
}

}  // TEST_SUITE
