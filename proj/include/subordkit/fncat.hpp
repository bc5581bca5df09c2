#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace subordkit {

using Complex = std::complex<double>;

/// Value and first two derivatives of an analytic function at a point.
struct Jet {
  Complex f;
  Complex df;
  Complex d2f;
};

/// Immutable expression tree over a fixed catalog of analytic constructors.
///
/// Every node carries exact derivative rules, so eval() returns the full jet
/// (f, f', f'') with no numerical differentiation. Principal branches are
/// used for all roots and powers; arguments on the cut are rejected rather
/// than silently evaluated. Trees are cheap to copy (shared immutable nodes)
/// and safe to evaluate concurrently.
class AnalyticMap {
 public:
  /// z -> c
  static AnalyticMap constant(Complex c);
  /// z -> z
  static AnalyticMap identity();
  /// z -> a + b z
  static AnalyticMap affine(Complex a, Complex b);
  /// u -> (1 + A u) / (1 + B u)
  static AnalyticMap moebius(Complex a, Complex b);
  static AnalyticMap moebius(Complex a, Complex b, AnalyticMap inner);
  /// u -> e^u
  static AnalyticMap exp_map();
  static AnalyticMap exp_map(AnalyticMap inner);
  /// u -> principal sqrt(1 + u)
  static AnalyticMap sqrt1p();
  static AnalyticMap sqrt1p(AnalyticMap inner);
  /// u -> principal u^exponent of the base expression
  static AnalyticMap power(AnalyticMap base, double exponent);
  /// u -> 2 / (1 + e^{-u})
  static AnalyticMap sigmoid();
  static AnalyticMap sigmoid(AnalyticMap inner);
  /// u -> 1 + sin u
  static AnalyticMap sine1p();
  static AnalyticMap sine1p(AnalyticMap inner);
  /// u -> u + sqrt(1 + u^2)
  static AnalyticMap crescent();
  static AnalyticMap crescent(AnalyticMap inner);
  /// z -> c0 + c1 z + ... + cn z^n
  static AnalyticMap polynomial(std::vector<Complex> coeffs);
  static AnalyticMap sum(AnalyticMap lhs, AnalyticMap rhs);
  static AnalyticMap product(AnalyticMap lhs, AnalyticMap rhs);
  static AnalyticMap quotient(AnalyticMap num, AnalyticMap den);
  /// z -> inner(c z) with |c| <= 1, so composition stays on the unit disk.
  static AnalyticMap scale(AnalyticMap inner, Complex c);

  /// Full jet at z, |z| <= 1. Throws EvalError on branch-cut arguments,
  /// poles, or points outside the closed disk.
  Jet eval(Complex z) const;

  /// Value-only path with continuous boundary extension: branch points where
  /// the map itself (not its derivative) extends continuously, e.g. the tip
  /// of sqrt(1+z) at z=-1, evaluate instead of throwing.
  Complex value(Complex z) const;

  /// Structural test for the identically-zero function.
  bool is_zero() const;

  /// Constructor tag, e.g. "moebius"; matches the JSON schema's "op".
  std::string op() const;

  /// Serializes to {"op": ..., "args": [...], "params": {...}}.
  nlohmann::json to_json() const;
  static AnalyticMap from_json(const nlohmann::json& spec);

  struct Node;  // internal; exposed only as an opaque type

 private:
  explicit AnalyticMap(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Max relative deviation between analytic (f', f'') and second-order central
/// finite differences with step h, taken over both the real and imaginary
/// step directions. f'' is differenced from analytic f' values so the check
/// stays well-conditioned at small steps. Throws EvalError(StepUnderflow)
/// when z + h is not representable distinctly from z.
double fd_residual(const AnalyticMap& map, Complex z, double h);

/// Boundary polyline h(e^{2 pi i k / n}), k = 0..n-1, skipping samples whose
/// angle matches a declared corner parameter; ordering is preserved so the
/// result is a closed polyline. Requires n >= 4.
std::vector<Complex> boundary_samples(const AnalyticMap& map, std::size_t n,
                                      const std::vector<double>& corner_angles = {});

}  // namespace subordkit
