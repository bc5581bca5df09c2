#pragma once

#include "subordkit/fncat.hpp"

namespace subordkit {

/// Qualifier attached to mean/operator values whose denominator was close to
/// (or exactly at) a cancelling zero.
enum class MeanFlag {
  Regular,       ///< denominator comfortably away from zero
  NearSingular,  ///< |denominator| below the relative threshold
  LimitBranch,   ///< value recovered by the ray-extrapolation limit branch
};

struct MeanValue {
  Complex value;
  MeanFlag flag = MeanFlag::Regular;
};

/// Relative denominator threshold below which harmonic-type ratios are
/// flagged rather than trusted.
inline constexpr double kDenominatorEpsilon = 1e-10;

/// Weighted arithmetic mean (1-t)x + ty; the weight t multiplies y.
Complex arith_mean(double t, Complex x, Complex y);

/// Weighted geometric mean x^t y^{1-t} on principal branches; the weight t
/// multiplies x's exponent. Errors on cut arguments and on a zero base
/// raised to a non-positive exponent.
Complex geo_mean(double t, Complex x, Complex y);

/// Weighted harmonic mean xy / (ty + (1-t)x); the weight t goes with x.
/// Near-vanishing denominators are flagged NearSingular; an exact zero
/// denominator with nonzero numerator throws EvalError(Pole).
MeanValue harm_mean(double t, Complex x, Complex y);

/// Coefficient pair (theta, phi) for the first-order operator; theta(0) = 1
/// is checked at construction (tolerance 1e-12).
class ThetaPhiPair {
 public:
  ThetaPhiPair(AnalyticMap theta, AnalyticMap phi);

  /// theta = phi = 1, the pair every reduction example uses.
  static ThetaPhiPair ones();

  const AnalyticMap& theta() const { return theta_; }
  const AnalyticMap& phi() const { return phi_; }

 private:
  AnalyticMap theta_;
  AnalyticMap phi_;
};

/// First-order combination (1 - t + t*theta(z)) f(z) + t*phi(z) z f'(z).
Complex p_operator(const ThetaPhiPair& pair, const AnalyticMap& f, double t,
                   Complex z);

/// Weighted-harmonic-mean operator P0 P1 / P_{1-t} of the two first-order
/// combinations; equals harm_mean(1-t, P0, P1) via the structural identity
/// P_{1-t} = t P0 + (1-t) P1.
///
/// When |P_{1-t}(z)| falls below the relative threshold, the value is
/// recovered as a limit: the ratio is sampled toward z along 4 rays at
/// distances {1e-3, 1e-4, 1e-5}, Richardson-extrapolated per ray, and
/// cross-checked across rays (relative discrepancy > 1e-6 throws
/// EvalError(NonRemovable)). The identically-zero f returns 0 exactly.
MeanValue h_operator(const ThetaPhiPair& pair, const AnalyticMap& f, double t,
                     Complex z);

}  // namespace subordkit
