#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subordkit/fncat.hpp"

namespace subordkit {

/// Three-valued membership verdict; boundary verdicts are never treated as
/// violations by downstream falsification searches.
enum class Containment { Inside, Boundary, Outside };

inline const char* to_string(Containment c) noexcept {
  switch (c) {
    case Containment::Inside: return "inside";
    case Containment::Boundary: return "boundary";
    case Containment::Outside: return "outside";
  }
  return "unknown";
}

/// One cached boundary sample: parameter angle and image point.
struct BoundarySample {
  double theta;
  Complex value;
};

/// Univalent target domain h(D) from the vetted catalog, carrying the map,
/// convexity metadata, declared corner parameters (the set of boundary
/// angles where smooth arcs meet), Re-extremes over the closure, and an
/// eagerly built boundary polyline for bounded entries.
///
/// Membership verdicts use exact inverse-image predicates: every catalog map
/// has a closed-form inverse, and unbounded images (half-plane, sector,
/// Janowski half-plane) admit no polyline at all. The polyline remains
/// available for export and for cross-validating the predicates.
class TargetDomain {
 public:
  /// (1 + (1-2a)z)/(1 - z), right half-plane Re w > alpha; alpha in [0, 1).
  static TargetDomain halfplane(double alpha);
  /// (1 + Az)/(1 + Bz) with -1 <= B < A <= 1; disc for B > -1, half-plane
  /// for B = -1.
  static TargetDomain janowski(double a, double b);
  /// e^z.
  static TargetDomain exp_dom();
  /// principal sqrt(1 + z): right lobe of a lemniscate.
  static TargetDomain sqrt_dom();
  /// 2/(1 + e^{-z}).
  static TargetDomain sigmoid_dom();
  /// z + sqrt(1 + z^2): lune between circular arcs through +-i.
  static TargetDomain crescent_dom();
  /// 1 + sin z.
  static TargetDomain sine_dom();
  /// 1 + 4z/3 + 2z^2/3: cardioid-like quadratic image.
  static TargetDomain cardioid_dom();
  /// ((1+z)/(1-z))^gamma: sector |arg w| < gamma*pi/2; gamma in (0, 1].
  static TargetDomain power_dom(double gamma);

  /// Catalog dispatcher for CLI/config use ("halfplane", "janowski", "exp",
  /// "sqrt", "sigmoid", "crescent", "sine", "cardioid-poly", "power").
  static TargetDomain make(const std::string& name,
                           const std::vector<double>& params = {});

  const std::string& name() const { return name_; }
  const AnalyticMap& map() const { return map_; }
  bool convex() const { return convex_; }
  bool bounded() const { return bounded_; }
  const std::vector<double>& corner_params() const { return corners_; }
  Complex h0() const { return h0_; }
  double re_sup() const { return re_sup_; }
  double re_inf() const { return re_inf_; }

  /// The same catalog map with its argument replaced by `inner`; used by
  /// samplers that build subordinate functions h(omega(z)).
  AnalyticMap map_with_inner(const AnalyticMap& inner) const;

  /// Exact membership verdict with a relative boundary band of width
  /// 1e-9 * (1 + |w|) measured in the image plane.
  Containment contains(Complex w) const;

  /// Winding-number verdict against the cached polyline (bounded domains
  /// only); kept as an independent cross-check of contains().
  Containment contains_polyline(Complex w) const;

  /// Supporting half-plane of a convex domain at a non-corner boundary
  /// angle: returns (h(zeta0), inward unit normal).
  std::pair<Complex, Complex> support_halfplane(double boundary_angle) const;

  /// Eager boundary polyline (empty for unbounded domains): uniformly
  /// sampled at resolution 4096 and adaptively refined near corners until
  /// every interior turn is below 5 degrees.
  const std::vector<BoundarySample>& boundary_cache() const { return cache_; }

 private:
  enum class Kind {
    Halfplane,
    Janowski,
    Exp,
    Sqrt,
    Sigmoid,
    Crescent,
    Sine,
    Cardioid,
    Power,
  };

  TargetDomain(Kind kind, std::string name, AnalyticMap map, bool convex,
               bool bounded, std::vector<double> corners, double re_inf,
               double re_sup, double p0 = 0.0, double p1 = 0.0);

  Kind kind_;
  std::string name_;
  AnalyticMap map_;
  bool convex_;
  bool bounded_;
  std::vector<double> corners_;
  double re_inf_;
  double re_sup_;
  double param0_;  ///< alpha (halfplane), A (janowski), gamma (power)
  double param1_;  ///< B (janowski)
  Complex h0_;
  std::vector<BoundarySample> cache_;
};

}  // namespace subordkit
