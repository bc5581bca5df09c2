#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "subordkit/domains.hpp"
#include "subordkit/fncat.hpp"
#include "subordkit/means.hpp"
#include "subordkit/subord.hpp"
#include "subordkit/thresholds.hpp"

/// Numerical checks for the applied consequences of the mean-chain results:
/// sufficient-condition margins, the classical convex-target ratio bounds,
/// a close-to-convexity criterion, and the starlikeness/univalence
/// corollaries driven by the piecewise thresholds.
namespace subordkit {

/// Which sufficient condition condition_check evaluates. The tokens mirror
/// the CLI values: "hypo2", "hypo3", "z1", "power".
enum class AppCondition { Hypo2, Hypo3, Z1, Power };

AppCondition parse_app_condition(const std::string& token);
const char* to_string(AppCondition which);

/// Extra scalars some conditions need: bound_m is the modulus bound M used by
/// the hypo3 margin; gamma in (0, 1] is the wedge exponent for the power
/// condition.
struct ConditionAux {
  double bound_m = 1.0;
  double gamma = 1.0;
};

/// Worst-case slack of a pointwise condition over the scan grid(s). The
/// condition holds on the grid iff margin >= 0. worst_zeta_angle is NaN for
/// conditions that do not scan a boundary parameter.
struct MarginReport {
  double margin;
  Complex worst_z;
  double worst_zeta_angle;
  std::size_t samples;
};

/// Minimum margin of the selected sufficient condition over zgrid:
///   hypo2:  Re Phi - (5|Theta - 1| - Re(Theta - 1))
///   hypo3:  Re Phi - 6(M + 1), with |Theta| <= M supplied via aux.bound_m
///   z1:     Re Phi - 2(|Theta - 1| - Re(Theta - 1))
///   power:  min over zgrid x boundary angles of
///           Re[Phi(z) + (1 - zeta^2)/(2 gamma zeta) * (Theta(z) - 1)],
///           requiring Theta(0) = 1 and Theta'(0) > 0 (DomainParam otherwise).
/// The power case samples zeta at angular midpoints so the poles at
/// zeta = +-1 are never hit.
MarginReport condition_check(AppCondition which, const ThetaPhiPair& pair,
                             const ConditionAux& aux = {},
                             const DiskGrid& zgrid = {},
                             std::size_t zeta_count = 512);

/// Boundary statistics behind the classical convex-target ratio bounds for a
/// catalog entry h with h(0) = 1 (checked to 1e-12; DomainParam otherwise).
/// Over non-corner boundary samples: with h1 = h - 1,
///   ratio_shifted_max = max |h1 / (zeta h1') - 1|   (expected <= 1 when
///                       h is convex),
///   dprime_min        = min |h'(zeta)|              (expected >= 1/4),
///   ratio_full_max    = max |h / (zeta h') - 1|     (expected <= 5).
/// Samples within 1e-9 of a declared corner angle are excluded and counted;
/// h' vanishing at a non-corner sample raises Runtime.
struct MarxReport {
  double ratio_shifted_max;
  double dprime_min;
  double ratio_full_max;
  std::size_t samples;
  std::size_t excluded;
};
MarxReport marx_strohhacker_check(const TargetDomain& dom, std::size_t n = 1024);

/// Scan of the close-to-convexity criterion
///   Re[ 2 z f'/g - 2 z (f')^2 / (3 g f' + z f'' g - z g' f') ] > 0
/// for f in the normalized class and a starlike comparison g (g != z f').
/// Grid points where g vanishes or the denominator collapses are skipped and
/// reported in denominator_failures. conclusion_min tracks Re(z f'/g), the
/// quantity the criterion certifies positive.
struct CloseToConvexReport {
  double premise_min;
  double conclusion_min;
  bool premise_holds;
  bool conclusion_holds;
  std::vector<Complex> denominator_failures;
  std::size_t samples;
};
CloseToConvexReport close_to_convex_check(const AnalyticMap& f,
                                          const AnalyticMap& g,
                                          const DiskGrid& zgrid = {});

/// Which corollary premise corollary_check evaluates; tokens mirror the CLI
/// values "starlike36", "univalent38", "fz39". Each substitutes
///   starlike36: p = z f'/f,  univalent38: p = f',  fz39: p = f/z
/// into gamma p^delta + (1-gamma) p^mu (p + z p'/p ... )^(1-mu) scheme below.
enum class CorollaryKind { Starlike36, Univalent38, Fz39 };

CorollaryKind parse_corollary_kind(const std::string& token);
const char* to_string(CorollaryKind which);

/// Result of testing one corollary on a concrete f. The premise value at z is
///   gamma p^delta + (1-gamma) p^mu (p + T)^(1-mu) / (1 + rho T / p),
/// with T = z p'/p reduced through f's jet (principal powers; samples whose
/// power base lands on the negative real axis are excluded and counted in
/// excluded_cut; vanishing p, f, or f' make the substitution undefined and
/// the sample lands in undefined_points). beta is the hypothesis-level
/// threshold threshold_sup(params, E1). When the premise clears beta, the
/// conclusion Re p > alpha is re-checked on a 4x angularly denser grid;
/// implication_violated fires only on a decisive counterexample
/// (premise margin > 0.01 and conclusion deficit > 1e-6).
struct CorollaryReport {
  double premise_min;
  double beta;
  bool premise_passes;
  double conclusion_min;
  bool conclusion_holds;
  bool implication_violated;
  std::size_t excluded_cut;
  std::vector<Complex> undefined_points;
  std::size_t samples;
};

/// Requires f normalized: f(0) = 0 and f'(0) = 1 to 1e-12 (DomainParam
/// otherwise).
CorollaryReport corollary_check(CorollaryKind which, const AnalyticMap& f,
                                const ThresholdParams& params,
                                const DiskGrid& zgrid = {});

}  // namespace subordkit
