#include "subordkit/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  if (d > std::numbers::pi) d = kTwoPi - d;
  return d;
}

bool near_any_corner(double theta, const std::vector<double>& corners) {
  for (double c : corners)
    if (circular_distance(theta, c) < 1e-9) return true;
  return false;
}

double point_segment_distance(Complex w, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(w - a);
  double t = ((w.real() - a.real()) * ab.real() +
              (w.imag() - a.imag()) * ab.imag()) /
             len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(w - (a + t * ab));
}

/// Uniform 4096-point boundary sampling (corner parameters excluded), then
/// adaptive subdivision of segments adjacent to sharp turns until every
/// interior turn is below 5 degrees or the angular gap reaches 1e-6.
std::vector<BoundarySample> build_polyline(const AnalyticMap& map,
                                           const std::vector<double>& corners) {
  std::vector<double> angles;
  angles.reserve(4096);
  for (std::size_t k = 0; k < 4096; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / 4096.0;
    if (!near_any_corner(theta, corners)) angles.push_back(theta);
  }

  const double turn_limit = 5.0 * std::numbers::pi / 180.0;
  const double min_gap = 4e-7;
  for (int pass = 0; pass < 24; ++pass) {
    std::vector<Complex> values(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i)
      values[i] = map.value(std::polar(1.0, angles[i]));

    std::vector<double> inserted;
    const std::size_t m = angles.size();
    auto forward_gap = [&](std::size_t i) {
      const double next = angles[(i + 1) % m] + (i + 1 == m ? kTwoPi : 0.0);
      return next - angles[i];
    };
    for (std::size_t i = 0; i < m; ++i) {
      const Complex v1 = values[i] - values[(i + m - 1) % m];
      const Complex v2 = values[(i + 1) % m] - values[i];
      if (std::abs(v1) == 0.0 || std::abs(v2) == 0.0) continue;
      const double cross = v1.real() * v2.imag() - v1.imag() * v2.real();
      const double dot = v1.real() * v2.real() + v1.imag() * v2.imag();
      if (std::abs(std::atan2(cross, dot)) <= turn_limit) continue;
      for (std::size_t j : {(i + m - 1) % m, i}) {
        const double gap = forward_gap(j);
        if (gap <= min_gap) continue;
        const double mid = std::fmod(angles[j] + gap / 2.0, kTwoPi);
        if (!near_any_corner(mid, corners)) {
          inserted.push_back(mid);
        } else {
          // The midpoint would land on an excluded corner; split the gap at
          // the quarter points instead so samples still approach the corner.
          for (double frac : {0.25, 0.75}) {
            const double q = std::fmod(angles[j] + gap * frac, kTwoPi);
            if (!near_any_corner(q, corners)) inserted.push_back(q);
          }
        }
      }
    }
    if (inserted.empty()) break;
    angles.insert(angles.end(), inserted.begin(), inserted.end());
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 angles.end());
  }

  std::vector<BoundarySample> samples;
  samples.reserve(angles.size());
  for (double theta : angles)
    samples.push_back({theta, map.value(std::polar(1.0, theta))});
  return samples;
}

}  // namespace

TargetDomain::TargetDomain(Kind kind, std::string name, AnalyticMap map,
                           bool convex, bool bounded,
                           std::vector<double> corners, double re_inf,
                           double re_sup, double p0, double p1)
    : kind_(kind),
      name_(std::move(name)),
      map_(std::move(map)),
      convex_(convex),
      bounded_(bounded),
      corners_(std::move(corners)),
      re_inf_(re_inf),
      re_sup_(re_sup),
      param0_(p0),
      param1_(p1),
      h0_(map_.value(Complex(0.0))) {
  if (bounded_) cache_ = build_polyline(map_, corners_);
}

TargetDomain TargetDomain::halfplane(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw EvalError(ErrorKind::DomainParam, "halfplane needs alpha in [0, 1)");
  return TargetDomain(Kind::Halfplane, "halfplane",
                      AnalyticMap::moebius(Complex(1.0 - 2.0 * alpha), Complex(-1.0)),
                      /*convex=*/true, /*bounded=*/false, {0.0}, alpha, kInf,
                      alpha);
}

TargetDomain TargetDomain::janowski(double a, double b) {
  if (!(b >= -1.0 && b < a && a <= 1.0))
    throw EvalError(ErrorKind::DomainParam,
                    "janowski needs -1 <= B < A <= 1");
  const AnalyticMap map = AnalyticMap::moebius(Complex(a), Complex(b));
  if (b == -1.0)
    return TargetDomain(Kind::Janowski, "janowski", map, true, false, {0.0},
                        (1.0 - a) / 2.0, kInf, a, b);
  return TargetDomain(Kind::Janowski, "janowski", map, true, true, {},
                      (1.0 - a) / (1.0 - b), (1.0 + a) / (1.0 + b), a, b);
}

TargetDomain TargetDomain::exp_dom() {
  return TargetDomain(Kind::Exp, "exp", AnalyticMap::exp_map(), true, true, {},
                      std::exp(-1.0), std::exp(1.0));
}

TargetDomain TargetDomain::sqrt_dom() {
  return TargetDomain(Kind::Sqrt, "sqrt", AnalyticMap::sqrt1p(), true, true,
                      {std::numbers::pi}, 0.0, std::sqrt(2.0));
}

TargetDomain TargetDomain::sigmoid_dom() {
  const double e = std::exp(1.0);
  return TargetDomain(Kind::Sigmoid, "sigmoid", AnalyticMap::sigmoid(), true,
                      true, {}, 2.0 / (1.0 + e), 2.0 * e / (1.0 + e));
}

TargetDomain TargetDomain::crescent_dom() {
  return TargetDomain(Kind::Crescent, "crescent", AnalyticMap::crescent(),
                      false, true,
                      {std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 2.0},
                      0.0, 1.0 + std::sqrt(2.0));
}

TargetDomain TargetDomain::sine_dom() {
  // Max Re sin over the unit circle, frozen from a high-precision
  // critical-point solve (stationary angle ~ 0.48981).
  const double amplitude = 0.8593327011359096;
  return TargetDomain(Kind::Sine, "sine", AnalyticMap::sine1p(), false, true,
                      {}, 1.0 - amplitude, 1.0 + amplitude);
}

TargetDomain TargetDomain::cardioid_dom() {
  return TargetDomain(Kind::Cardioid, "cardioid-poly",
                      AnalyticMap::polynomial({Complex(1.0), Complex(4.0 / 3.0),
                                               Complex(2.0 / 3.0)}),
                      false, true, {std::numbers::pi}, 0.0, 3.0);
}

TargetDomain TargetDomain::power_dom(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw EvalError(ErrorKind::DomainParam, "power needs gamma in (0, 1]");
  return TargetDomain(Kind::Power, "power",
                      AnalyticMap::power(AnalyticMap::moebius(1.0, -1.0), gamma),
                      true, false, {0.0, std::numbers::pi}, 0.0, kInf, gamma);
}

TargetDomain TargetDomain::make(const std::string& name,
                                const std::vector<double>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw EvalError(ErrorKind::Config,
                      "domain '" + name + "' expects " + std::to_string(n) +
                          " parameter(s)");
  };
  if (name == "halfplane") {
    want(1);
    return halfplane(params[0]);
  }
  if (name == "janowski") {
    want(2);
    return janowski(params[0], params[1]);
  }
  if (name == "exp") {
    want(0);
    return exp_dom();
  }
  if (name == "sqrt") {
    want(0);
    return sqrt_dom();
  }
  if (name == "sigmoid") {
    want(0);
    return sigmoid_dom();
  }
  if (name == "crescent") {
    want(0);
    return crescent_dom();
  }
  if (name == "sine") {
    want(0);
    return sine_dom();
  }
  if (name == "cardioid-poly" || name == "cardioid") {
    want(0);
    return cardioid_dom();
  }
  if (name == "power") {
    want(1);
    return power_dom(params[0]);
  }
  throw EvalError(ErrorKind::Config, "unknown domain '" + name + "'");
}

AnalyticMap TargetDomain::map_with_inner(const AnalyticMap& inner) const {
  switch (kind_) {
    case Kind::Halfplane:
      return AnalyticMap::moebius(Complex(1.0 - 2.0 * param0_), Complex(-1.0),
                                  inner);
    case Kind::Janowski:
      return AnalyticMap::moebius(Complex(param0_), Complex(param1_), inner);
    case Kind::Exp:
      return AnalyticMap::exp_map(inner);
    case Kind::Sqrt:
      return AnalyticMap::sqrt1p(inner);
    case Kind::Sigmoid:
      return AnalyticMap::sigmoid(inner);
    case Kind::Crescent:
      return AnalyticMap::crescent(inner);
    case Kind::Sine:
      return AnalyticMap::sine1p(inner);
    case Kind::Cardioid:
      return AnalyticMap::sum(
          AnalyticMap::constant(1.0),
          AnalyticMap::sum(
              AnalyticMap::product(AnalyticMap::constant(4.0 / 3.0), inner),
              AnalyticMap::product(AnalyticMap::constant(2.0 / 3.0),
                                   AnalyticMap::product(inner, inner))));
    case Kind::Power:
      return AnalyticMap::power(AnalyticMap::moebius(1.0, -1.0, inner),
                                param0_);
  }
  throw EvalError(ErrorKind::Runtime, "unhandled domain kind");
}

Containment TargetDomain::contains(Complex w) const {
  const double eps = 1e-9 * (1.0 + std::abs(w));
  // First-order image-plane distance estimates are only meaningful when the
  // preimage sits near the unit circle; outside this window the sign of the
  // defect is decisive anyway.
  constexpr double preimage_window = 1e-4;
  const auto banded = [&](double z_defect, double dw_dz) -> Containment {
    const double d = z_defect * dw_dz;
    if (std::abs(z_defect) <= preimage_window && std::abs(d) <= eps)
      return Containment::Boundary;
    return z_defect < 0.0 ? Containment::Inside : Containment::Outside;
  };

  switch (kind_) {
    case Kind::Halfplane: {
      const double d = w.real() - param0_;
      if (std::abs(d) <= eps) return Containment::Boundary;
      return d > 0.0 ? Containment::Inside : Containment::Outside;
    }
    case Kind::Janowski: {
      const double a = param0_, b = param1_;
      if (b == -1.0) {
        const double d = w.real() - (1.0 - a) / 2.0;
        if (std::abs(d) <= eps) return Containment::Boundary;
        return d > 0.0 ? Containment::Inside : Containment::Outside;
      }
      const double center = (1.0 - a * b) / (1.0 - b * b);
      const double radius = (a - b) / (1.0 - b * b);
      const double d = std::abs(w - center) - radius;
      if (std::abs(d) <= eps) return Containment::Boundary;
      return d < 0.0 ? Containment::Inside : Containment::Outside;
    }
    case Kind::Exp: {
      if (w == Complex(0.0)) return Containment::Outside;
      const Complex z = std::log(w);
      return banded(std::abs(z) - 1.0, std::abs(w));
    }
    case Kind::Sqrt: {
      if (std::abs(w) <= eps) return Containment::Boundary;  // corner at 0
      if (w.real() <= 0.0) return Containment::Outside;      // left lobe side
      const double defect = std::abs(w * w - 1.0) - 1.0;
      return banded(defect, 1.0 / (2.0 * std::abs(w)));
    }
    case Kind::Sigmoid: {
      if (w == Complex(0.0) || w == Complex(2.0)) return Containment::Outside;
      const Complex z = -std::log((2.0 - w) / w);
      return banded(std::abs(z) - 1.0, std::abs(w * (2.0 - w)) / 2.0);
    }
    case Kind::Crescent: {
      if (std::abs(w - Complex(0.0, 1.0)) <= eps ||
          std::abs(w - Complex(0.0, -1.0)) <= eps)
        return Containment::Boundary;  // corners at +-i
      if (w == Complex(0.0)) return Containment::Outside;
      const Complex s = (w * w + 1.0) / (2.0 * w);  // sqrt(1+z^2) on the image side
      if (s.real() <= 0.0) return Containment::Outside;
      const Complex z = (w * w - 1.0) / (2.0 * w);
      return banded(std::abs(z) - 1.0,
                    2.0 * std::norm(w) / std::max(std::abs(w * w + 1.0), 1e-300));
    }
    case Kind::Sine: {
      const Complex z = std::asin(w - 1.0);
      return banded(std::abs(z) - 1.0, std::abs(std::cos(z)));
    }
    case Kind::Cardioid: {
      if (std::abs(w - Complex(1.0 / 3.0)) <= eps)
        return Containment::Boundary;  // cusp at h(-1) = 1/3
      const Complex radicand = 1.0 - 1.5 * (1.0 - w);
      if (radicand.imag() == 0.0 && radicand.real() < 0.0) {
        // Both quadratic roots are -1 +- i|s|, never strictly inside.
        const double dist = std::abs(Complex(-1.0, std::sqrt(-radicand.real())));
        return dist <= 1.0 + 1e-12 ? Containment::Boundary : Containment::Outside;
      }
      const Complex s = std::sqrt(radicand);
      const Complex z = -1.0 + s;  // the root that can lie in the disk
      return banded(std::abs(z) - 1.0, (4.0 / 3.0) * std::abs(s));
    }
    case Kind::Power: {
      if (std::abs(w) <= eps) return Containment::Boundary;  // sector apex
      const double half_opening = param0_ * std::numbers::pi / 2.0;
      const double slack = half_opening - std::abs(std::arg(w));
      const double d = std::abs(w) * std::sin(std::min(std::abs(slack),
                                                       std::numbers::pi / 2.0));
      if (d <= eps) return Containment::Boundary;
      return slack > 0.0 ? Containment::Inside : Containment::Outside;
    }
  }
  throw EvalError(ErrorKind::Runtime, "unhandled domain kind");
}

Containment TargetDomain::contains_polyline(Complex w) const {
  if (cache_.empty())
    throw EvalError(ErrorKind::Runtime,
                    "unbounded domain has no polyline; use contains()");
  const double eps = 1e-9 * (1.0 + std::abs(w));
  double min_distance = kInf;
  bool inside = false;
  const std::size_t m = cache_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Complex a = cache_[i].value;
    const Complex b = cache_[(i + 1) % m].value;
    min_distance = std::min(min_distance, point_segment_distance(w, a, b));
    if ((a.imag() > w.imag()) != (b.imag() > w.imag())) {
      const double x_hit =
          a.real() + (w.imag() - a.imag()) * (b.real() - a.real()) /
                         (b.imag() - a.imag());
      if (x_hit > w.real()) inside = !inside;
    }
  }
  if (min_distance <= eps) return Containment::Boundary;
  return inside ? Containment::Inside : Containment::Outside;
}

std::pair<Complex, Complex> TargetDomain::support_halfplane(
    double boundary_angle) const {
  if (!convex_)
    throw EvalError(ErrorKind::DomainParam,
                    "supporting half-planes require a convex domain");
  if (near_any_corner(boundary_angle, corners_))
    throw EvalError(ErrorKind::DomainParam,
                    "support angle coincides with a corner parameter");
  const Complex zeta = std::polar(1.0, boundary_angle);
  const Jet jet = map_.eval(zeta);
  const Complex v = zeta * jet.df;
  const double mag = std::abs(v);
  if (mag < 1e-12)
    throw EvalError(ErrorKind::Runtime,
                    "h' vanishes at a non-corner boundary angle");
  // Boundary is traversed counterclockwise, so the inward normal is the
  // tangent i*zeta*h' rotated by +90 degrees: -zeta*h'.
  return {jet.f, -v / mag};
}

}  // namespace subordkit
