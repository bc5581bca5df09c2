#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "subordkit/rational.hpp"

/// Piecewise order thresholds for the weighted mean-chain inequalities,
/// boundary-contact case analysis, and the brute-force regional oracle
/// that certifies (or refutes) each closed-form branch.
namespace subordkit {

/// Parameter bundle for the threshold formulas. Construction validates the
/// ranges gamma in [0,1], alpha in [0,1), mu in [0,1], delta in [1,2],
/// rho in [0,1], plus the coupling rho >= alpha(1+2 alpha) required whenever
/// alpha <= 1/2; violations raise DomainParam.
struct ThresholdParams {
  double gamma;
  double alpha;
  double mu;
  double delta;
  double rho;

  ThresholdParams(double gamma_, double alpha_, double mu_, double delta_,
                  double rho_);
};

/// Boundary contact datum: a point alpha + ix (x > 0) on the vertical line
/// together with the radial slope product my < 0. The admissible slopes obey
/// my <= boundary_my_bound(alpha, x); ops that need that inequality check it
/// themselves because some diagnostics evaluate the flags outside the band.
struct BoundaryPoint {
  double x;
  double my;
};

/// Largest admissible slope product at height x:
///   -((1-alpha)^2 + x^2) / (2(1-alpha)).
double boundary_my_bound(double alpha, double x);

/// Outcome of the four case tests that select a threshold branch.
struct CaseFlags {
  bool i1;  ///< 0 <= alpha <= 1/2
  bool i2;  ///< alpha^2 - x^2 + rho*my > 0
  bool i3;  ///< x^2 >= (2 alpha^2 - rho(1-alpha))(1-alpha) / (2(1-alpha)+rho)
  bool i4;  ///< alpha^2 + x^2 + rho*my <= 0

  friend bool operator==(const CaseFlags&, const CaseFlags&) = default;
};

/// Evaluates the four case tests at a boundary point. Requires x > 0
/// (DomainParam otherwise); the slope band my <= boundary_my_bound is not
/// enforced here so the flags can be inspected on out-of-band diagnostics.
CaseFlags case_flags(double alpha, double rho, const BoundaryPoint& pt);

/// First-kind threshold branch value for the given flags. Branch order:
/// i1, then i2, then i3, then the complement. Throws DomainParam
/// ("degenerate parameters") when the selected branch's denominator is zero,
/// which happens only at (alpha, rho) = (0, 0) and (1/2, 1).
double beta0(double alpha, double rho, const CaseFlags& flags);

/// Second-kind threshold branch value. Branch order: i4 first, then the
/// i1/i2/i3 cascade on the complement. Same degeneracy rule as beta0.
double beta1(double alpha, double rho, const CaseFlags& flags);

/// Which endpoint of the operator pencil the oracle compares against.
enum class EndpointCase { E0, E1 };

/// Real part of the first pencil endpoint at a boundary point:
///   alpha + (1-rho) * my * alpha * (alpha^2 + x^2 + rho*my) / D,
///   D = (alpha^2 - x^2 + rho*my)^2 + 4 alpha^2 x^2.
/// Requires x > 0 so D > 0.
double re_E0(double alpha, double rho, const BoundaryPoint& pt);

/// Real part of the second pencil endpoint:
///   alpha - alpha * rho * my * (alpha^2 + x^2 + rho*my) / D.
double re_E1(double alpha, double rho, const BoundaryPoint& pt);

/// Exact-rational mirrors of re_E0 / re_E1, used to cross-check the double
/// implementations and each other.
Rational re_E0_exact(const Rational& alpha, const Rational& rho,
                     const Rational& x, const Rational& my);
Rational re_E1_exact(const Rational& alpha, const Rational& rho,
                     const Rational& x, const Rational& my);

/// Independent assembly of the same real parts through exact complex
/// arithmetic on q = alpha + ix:
///   E0 = q (q^2 + my) / (q^2 + rho*my),  E1 = q^3 / (q^2 + rho*my).
/// Must agree with the *_exact formulas identically (tolerance zero).
Rational re_E0_assembled(const Rational& alpha, const Rational& rho,
                         const Rational& x, const Rational& my);
Rational re_E1_assembled(const Rational& alpha, const Rational& rho,
                         const Rational& x, const Rational& my);

/// Threshold value at a concrete boundary point with the safety rule for
/// exact case-boundary ties: when one of the i2/i3/i4 tests lands exactly on
/// its equality threshold, both adjacent branches are evaluated and the
/// larger is returned. `boundary_tie`, when non-null, is set accordingly.
double beta_at(double alpha, double rho, EndpointCase which,
               const BoundaryPoint& pt, bool* boundary_tie = nullptr);

/// Rectangular scan region for the oracle: x log-spaced over (x_min, x_max]
/// via x_i = 10^(lg(x_min) + (i+1)(lg(x_max)-lg(x_min))/x_count), and for each
/// x the slope my swept linearly from boundary_my_bound(alpha, x) down to
/// my_floor. Slices whose bound already lies below my_floor are skipped.
struct RegionGrid {
  std::size_t x_count = 400;
  std::size_t my_count = 400;
  double x_min = 1e-3;
  double x_max = 10.0;
  double my_floor = -50.0;
};

/// Result of a regional scan: the worst (largest) margin re_E - beta over the
/// grid, where it occurred, which flag patterns were encountered, and how
/// many samples and case-boundary ties the scan saw. A non-positive
/// worst_margin certifies the branch table on the sampled region.
struct RegionalReport {
  double worst_margin;
  BoundaryPoint worst_point;
  CaseFlags worst_flags;
  std::vector<CaseFlags> cells;
  std::size_t samples;
  std::size_t boundary_ties;
};

/// Brute-force comparison of re_E against the branch threshold over the
/// region grid. Parallel over x slices; the reduction runs in slice order so
/// results are deterministic for a fixed grid. Requires alpha in [0,1),
/// rho in [0,1], and the coupling rho >= alpha(1+2 alpha) when alpha <= 1/2.
RegionalReport regional_oracle(double alpha, double rho, EndpointCase which,
                               const RegionGrid& grid = {});

/// Distinct flag patterns reachable on a (coarse) region grid for the given
/// parameters, in first-encountered scan order.
std::vector<CaseFlags> reachable_cases(double alpha, double rho,
                                       const RegionGrid& grid = {64, 64});

/// The twelve (alpha, rho) pairs whose regional scans jointly reach every
/// branch cell of both threshold tables; the set the certification suite
/// sweeps.
const std::vector<std::pair<double, double>>& case_coverage_design();

/// The default exponent grid {1.0, 1.1, ..., 2.0} for spiral_re_check.
std::vector<double> default_delta_grid();

/// Worst margin of Re((alpha + ix)^delta) - alpha over the exponent grid and
/// the log-spaced x grid (principal powers). Non-positive margins confirm
/// that powering boundary contacts never raises the real part above alpha.
struct SpiralReport {
  double worst_margin;
  double worst_delta;
  double worst_x;
};
SpiralReport spiral_re_check(double alpha,
                             const std::vector<double>& delta_grid =
                                 default_delta_grid(),
                             const RegionGrid& grid = {});

/// Convex combination gamma*alpha + (1-gamma)*beta_i evaluated at a concrete
/// boundary point (with the beta_at tie rule).
double combined_threshold(const ThresholdParams& params, EndpointCase which,
                          const BoundaryPoint& pt);

/// Hypothesis-level threshold: gamma*alpha + (1-gamma) * sup of the branch
/// values over every flag pattern reachable on the sampled region. This is
/// the usable cutoff when the boundary contact datum is quantified away.
double threshold_sup(const ThresholdParams& params, EndpointCase which,
                     const RegionGrid& grid = {64, 64});

}  // namespace subordkit
