#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "subordkit/rational.hpp"

namespace subordkit {

/// Validated parameter quadruple: (a, b) shapes the Janowski expression
/// (1 + a w)/(1 + b w) and (d, e) the spiral target quotient
/// (1 + d z)/(1 + e z). Requires -1 <= b < a <= 1 and -1 <= e < d <= 1;
/// construction throws EvalError(DomainParam) otherwise.
struct JanowskiQuad {
  JanowskiQuad(Rational a_in, Rational b_in, Rational d_in, Rational e_in);

  static bool valid(const Rational& a, const Rational& b, const Rational& d,
                    const Rational& e);

  Rational a, b, d, e;
};

/// Trigonometric-polynomial coefficients of the boundary functional at a
/// fixed multiplier k >= 1: numerator l + m w + n w^2 and denominator
/// g + h w + i w^2 + j w^3 with w on the unit circle. Recomputable
/// bit-for-bit from (quad, k).
template <typename Num>
struct SpiralCoeffs {
  Num l, m, n, g, h, i, j;
};

/// Exact coefficients at rational k. Throws EvalError(DomainParam) for
/// k < 1.
SpiralCoeffs<Rational> spiral_coeffs(const JanowskiQuad& q, const Rational& k);

/// Floating-point mirror of the same formulas.
SpiralCoeffs<double> spiral_coeffs_f(const JanowskiQuad& q, double k);

/// Leading k-slopes of h and i: h1 = (a-b)(2e-d), i1 = (a-b)(2ae-bd).
/// Their product's sign decides the large-k verdict of the ring condition.
std::pair<Rational, Rational> spiral_slopes(const JanowskiQuad& q);

/// Minimum of a t^2 + b t + c over t in [-1, 1]: interior vertex value
/// (4ac - b^2)/(4a) when a > 0 and |b| < 2a, endpoint value a - |b| + c
/// otherwise.
double min_quad(double a, double b, double c);

/// Default multiplier grid {1, 2, ..., 100} for the ring condition.
std::vector<Rational> default_k_range();

/// {lo, lo + step, ...} up to hi inclusive; exact arithmetic.
std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi,
                                    const Rational& step);

/// Exact verdicts and margins for the three inequality conditions
/// gating the spiral subordination result.
struct ConditionReport {
  bool cond3 = false;          ///< positivity: 2e(1+a) - d(1+b) > 0
  Rational cond3_margin;
  bool cond2_all = false;      ///< ring condition at every grid k
  std::vector<std::pair<Rational, bool>> cond2_by_k;
  int cond2_asymptote_sign = 0;  ///< sign of h1 * i1 (large-k behavior)
  bool cond4 = false;          ///< bound condition (margin >= 0)
  Rational cond4_margin;

  bool all() const { return cond3 && cond2_all && cond4; }
};

/// Ring condition at one k, exactly:
/// gh + hi - 3gj + ij + 12gj >= 4|gi + hj|.
bool cond2_at(const JanowskiQuad& q, const Rational& k);

ConditionReport check_conditions(
    const JanowskiQuad& q,
    const std::vector<Rational>& k_range = default_k_range());

/// Floating mirrors of the individual condition verdicts, used to
/// cross-check the exact path.
bool cond2_at_f(const JanowskiQuad& q, double k);
bool cond3_f(const JanowskiQuad& q);
bool cond4_f(const JanowskiQuad& q);

/// |l + m w + n w^2|^2 on w = e^{i theta} as a polynomial in cos(theta).
double modulus_sq_quadratic(double l, double m, double n, double theta);
/// |g + h w + i w^2 + j w^3|^2 likewise (cubic in cos(theta)).
double modulus_sq_cubic(double g, double h, double i, double j, double theta);

/// (a-b) |l + m w + n w^2| / |g + h w + i w^2 + j w^3| on w = e^{i theta},
/// through the cos-polynomial expansions. Throws EvalError(Pole) when the
/// denominator modulus is <= 1e-14.
double boundary_ratio(const JanowskiQuad& q, double k, double theta);

/// (3 + 2ab - |4a + b|) / (2e(a+1)(a(b+2)+1) - d(b+1)(a(2b+3)+b+2)),
/// exact. Inapplicable (no value) when the denominator is not positive.
struct BoundResult {
  bool applicable = false;
  Rational value;  ///< meaningful only when applicable
};

BoundResult final_bound(const JanowskiQuad& q);

/// psi(k) = ((l - |m| + n) / (g + h + i + j))^2, exact. Throws
/// EvalError(Pole) when the denominator sum vanishes.
Rational psi_k(const JanowskiQuad& q, const Rational& k);

/// Default psi grid {1, 1.1, ..., 100} (exact tenths).
std::vector<Rational> default_psi_grid();

struct MonotoneReport {
  bool nondecreasing = false;   ///< within 1e-12 between neighbors
  bool at_least_first = false;  ///< psi(k) >= psi(k0) - 1e-12 across grid
  std::optional<double> first_drop_k;
  std::vector<double> psi_values;
};

/// Scans psi over the grid. Requires the positivity condition (cond3);
/// throws EvalError(DomainParam) when it fails.
MonotoneReport psi_k_monotone(
    const JanowskiQuad& q,
    const std::vector<Rational>& k_grid = default_psi_grid());

struct FeasibilityHit {
  JanowskiQuad quad;
  Rational bound;  ///< exact final bound, >= 1
};

/// All grid quadruples that pass every condition and have final bound
/// >= 1, in lexicographic (a, b, d, e) order. Defaults: a over step 1/8,
/// b over 1/4, d over 1/2, e over 1/16, each spanning [-1, 1].
std::vector<FeasibilityHit> feasibility_scan(
    const std::vector<Rational>& a_grid, const std::vector<Rational>& b_grid,
    const std::vector<Rational>& d_grid, const std::vector<Rational>& e_grid,
    const std::vector<Rational>& k_range = default_k_range());

std::vector<FeasibilityHit> feasibility_scan();

}  // namespace subordkit
