#include "subordkit/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_grid(const DiskGrid& grid) {
  if (grid.radii.empty())
    throw EvalError(ErrorKind::Config, "disk grid needs at least one radius");
  if (grid.angular_count < 4)
    throw EvalError(ErrorKind::Config,
                    "disk grid needs at least 4 angles per ring");
  double prev = 0.0;
  for (double r : grid.radii) {
    if (!(r > prev && r < 1.0))
      throw EvalError(ErrorKind::Config,
                      "disk grid radii must increase strictly inside (0, 1)");
    prev = r;
  }
}

template <class Fn>
void for_each_grid_point(const DiskGrid& grid, Fn&& fn) {
  for (double r : grid.radii) {
    for (std::size_t k = 0; k < grid.angular_count; ++k) {
      fn(std::polar(r, kTwoPi * static_cast<double>(k) /
                           static_cast<double>(grid.angular_count)));
    }
  }
}

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

/// A principal power of a base on the negative real axis sits on the branch
/// cut; such samples are excluded rather than evaluated on either side.
bool on_power_cut(Complex base, double exponent) {
  if (exponent == std::floor(exponent)) return false;
  return base.real() < 0.0 &&
         std::abs(base.imag()) <= 1e-12 * (1.0 + std::abs(base));
}

}  // namespace

AppCondition parse_app_condition(const std::string& token) {
  if (token == "hypo2") return AppCondition::Hypo2;
  if (token == "hypo3") return AppCondition::Hypo3;
  if (token == "z1") return AppCondition::Z1;
  if (token == "power") return AppCondition::Power;
  throw EvalError(ErrorKind::Config,
                  "unknown condition '" + token +
                      "' (expected hypo2, hypo3, z1, or power)");
}

const char* to_string(AppCondition which) {
  switch (which) {
    case AppCondition::Hypo2: return "hypo2";
    case AppCondition::Hypo3: return "hypo3";
    case AppCondition::Z1: return "z1";
    case AppCondition::Power: return "power";
  }
  return "?";
}

MarginReport condition_check(AppCondition which, const ThetaPhiPair& pair,
                             const ConditionAux& aux, const DiskGrid& zgrid,
                             std::size_t zeta_count) {
  validate_grid(zgrid);
  const AnalyticMap& theta = pair.theta();
  const AnalyticMap& phi = pair.phi();

  MarginReport report{std::numeric_limits<double>::infinity(), Complex{},
                      std::numeric_limits<double>::quiet_NaN(), 0};

  if (which == AppCondition::Power) {
    if (!(aux.gamma > 0.0 && aux.gamma <= 1.0))
      throw EvalError(ErrorKind::DomainParam,
                      "power condition needs gamma in (0, 1]");
    if (zeta_count < 4)
      throw EvalError(ErrorKind::Config,
                      "power condition needs at least 4 boundary angles");
    const Jet t0 = theta.eval(Complex{0.0, 0.0});
    if (!(std::abs(t0.df.imag()) <= 1e-12 && t0.df.real() > 0.0))
      throw EvalError(ErrorKind::DomainParam,
                      "power condition needs Theta'(0) real and positive");
    // Midpoint angles keep zeta away from the poles at +-1.
    std::vector<double> angles(zeta_count);
    std::vector<Complex> factors(zeta_count);
    for (std::size_t k = 0; k < zeta_count; ++k) {
      const double tau = kTwoPi * (static_cast<double>(k) + 0.5) /
                         static_cast<double>(zeta_count);
      const Complex zeta = std::polar(1.0, tau);
      angles[k] = tau;
      factors[k] = (1.0 - zeta * zeta) / (2.0 * aux.gamma * zeta);
    }
    for_each_grid_point(zgrid, [&](Complex z) {
      const Complex shift = theta.value(z) - 1.0;
      const double base = phi.value(z).real();
      for (std::size_t k = 0; k < zeta_count; ++k) {
        const double slack = base + (factors[k] * shift).real();
        ++report.samples;
        if (slack < report.margin) {
          report.margin = slack;
          report.worst_z = z;
          report.worst_zeta_angle = angles[k];
        }
      }
    });
    return report;
  }

  for_each_grid_point(zgrid, [&](Complex z) {
    const Complex shift = theta.value(z) - 1.0;
    const double re_phi = phi.value(z).real();
    double slack = 0.0;
    switch (which) {
      case AppCondition::Hypo2:
        slack = re_phi - (5.0 * std::abs(shift) - shift.real());
        break;
      case AppCondition::Hypo3:
        slack = re_phi - 6.0 * (aux.bound_m + 1.0);
        break;
      case AppCondition::Z1:
        slack = re_phi - 2.0 * (std::abs(shift) - shift.real());
        break;
      case AppCondition::Power:
        break;  // handled above
    }
    ++report.samples;
    if (slack < report.margin) {
      report.margin = slack;
      report.worst_z = z;
    }
  });
  return report;
}

MarxReport marx_strohhacker_check(const TargetDomain& dom, std::size_t n) {
  if (n < 4)
    throw EvalError(ErrorKind::Config, "boundary sampling needs n >= 4");
  if (std::abs(dom.h0() - Complex{1.0, 0.0}) > 1e-12)
    throw EvalError(ErrorKind::DomainParam,
                    "ratio bounds need a target with h(0) = 1");
  const std::vector<double>& corners = dom.corner_params();

  MarxReport report{0.0, std::numeric_limits<double>::infinity(), 0.0, 0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) /
                         static_cast<double>(n);
    if (near_any_corner(theta, corners)) {
      ++report.excluded;
      continue;
    }
    const Complex zeta = std::polar(1.0, theta);
    const Jet jet = dom.map().eval(zeta);
    if (std::abs(jet.df) < 1e-12)
      throw EvalError(ErrorKind::Runtime,
                      "h' vanishes at a non-corner boundary sample");
    const Complex zdh = zeta * jet.df;
    report.ratio_shifted_max = std::max(
        report.ratio_shifted_max, std::abs((jet.f - 1.0) / zdh - 1.0));
    report.dprime_min = std::min(report.dprime_min, std::abs(jet.df));
    report.ratio_full_max =
        std::max(report.ratio_full_max, std::abs(jet.f / zdh - 1.0));
    ++report.samples;
  }
  return report;
}

CloseToConvexReport close_to_convex_check(const AnalyticMap& f,
                                          const AnalyticMap& g,
                                          const DiskGrid& zgrid) {
  validate_grid(zgrid);
  CloseToConvexReport report{std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity(),
                             false,
                             false,
                             {},
                             0};
  for_each_grid_point(zgrid, [&](Complex z) {
    const Jet fj = f.eval(z);
    const Jet gj = g.eval(z);
    if (std::abs(gj.f) <= 1e-12) {
      report.denominator_failures.push_back(z);
      return;
    }
    const Complex t1 = 3.0 * gj.f * fj.df;
    const Complex t2 = z * fj.d2f * gj.f;
    const Complex t3 = z * gj.df * fj.df;
    const Complex den = t1 + t2 - t3;
    const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
    if (std::abs(den) <= 1e-12 * (1.0 + scale)) {
      report.denominator_failures.push_back(z);
      return;
    }
    const Complex ratio = z * fj.df / gj.f;
    const Complex expr = 2.0 * ratio - 2.0 * z * fj.df * fj.df / den;
    report.premise_min = std::min(report.premise_min, expr.real());
    report.conclusion_min = std::min(report.conclusion_min, ratio.real());
    ++report.samples;
  });
  if (report.samples == 0)
    throw EvalError(ErrorKind::Runtime,
                    "no usable grid samples: every point hit a vanishing "
                    "denominator");
  report.premise_holds = report.premise_min > 0.0;
  report.conclusion_holds = report.conclusion_min > 0.0;
  return report;
}

CorollaryKind parse_corollary_kind(const std::string& token) {
  if (token == "starlike36") return CorollaryKind::Starlike36;
  if (token == "univalent38") return CorollaryKind::Univalent38;
  if (token == "fz39") return CorollaryKind::Fz39;
  throw EvalError(ErrorKind::Config,
                  "unknown corollary '" + token +
                      "' (expected starlike36, univalent38, or fz39)");
}

const char* to_string(CorollaryKind which) {
  switch (which) {
    case CorollaryKind::Starlike36: return "starlike36";
    case CorollaryKind::Univalent38: return "univalent38";
    case CorollaryKind::Fz39: return "fz39";
  }
  return "?";
}

namespace {

struct Substitution {
  Complex p;
  Complex t;  ///< z p'/p reduced through the jet of f
  bool defined;
};

Substitution substitute(CorollaryKind which, const Jet& fj, Complex z) {
  switch (which) {
    case CorollaryKind::Starlike36: {
      if (std::abs(fj.f) <= 1e-12 || std::abs(fj.df) <= 1e-12)
        return {Complex{}, Complex{}, false};
      const Complex p = z * fj.df / fj.f;
      return {p, 1.0 + z * fj.d2f / fj.df - p, true};
    }
    case CorollaryKind::Univalent38: {
      if (std::abs(fj.df) <= 1e-12) return {Complex{}, Complex{}, false};
      return {fj.df, z * fj.d2f / fj.df, true};
    }
    case CorollaryKind::Fz39: {
      if (std::abs(fj.f) <= 1e-12) return {Complex{}, Complex{}, false};
      return {fj.f / z, z * fj.df / fj.f - 1.0, true};
    }
  }
  return {Complex{}, Complex{}, false};
}

}  // namespace

CorollaryReport corollary_check(CorollaryKind which, const AnalyticMap& f,
                                const ThresholdParams& params,
                                const DiskGrid& zgrid) {
  validate_grid(zgrid);
  const Jet origin = f.eval(Complex{0.0, 0.0});
  if (std::abs(origin.f) > 1e-12 || std::abs(origin.df - 1.0) > 1e-12)
    throw EvalError(ErrorKind::DomainParam,
                    "corollary checks need f normalized: f(0) = 0, f'(0) = 1");

  CorollaryReport report{std::numeric_limits<double>::infinity(),
                         threshold_sup(params, EndpointCase::E1),
                         false,
                         std::numeric_limits<double>::infinity(),
                         false,
                         false,
                         0,
                         {},
                         0};

  for_each_grid_point(zgrid, [&](Complex z) {
    const Substitution sub = substitute(which, f.eval(z), z);
    if (!sub.defined || std::abs(sub.p) <= 1e-12) {
      report.undefined_points.push_back(z);
      return;
    }
    if (on_power_cut(sub.p, params.delta) || on_power_cut(sub.p, params.mu) ||
        on_power_cut(sub.p + sub.t, 1.0 - params.mu)) {
      ++report.excluded_cut;
      return;
    }
    const Complex ratio = params.rho * sub.t / sub.p;
    const Complex den = 1.0 + ratio;
    if (std::abs(den) <= 1e-12 * (1.0 + std::abs(ratio))) {
      report.undefined_points.push_back(z);
      return;
    }
    const Complex value =
        params.gamma * std::pow(sub.p, params.delta) +
        (1.0 - params.gamma) * std::pow(sub.p, params.mu) *
            std::pow(sub.p + sub.t, 1.0 - params.mu) / den;
    report.premise_min = std::min(report.premise_min, value.real());
    ++report.samples;
  });
  if (report.samples == 0)
    throw EvalError(ErrorKind::Runtime,
                    "no usable grid samples: every substitution was undefined "
                    "or cut-crossing");
  report.premise_passes = report.premise_min > report.beta;

  const DiskGrid dense{zgrid.radii, zgrid.angular_count * 4};
  for_each_grid_point(dense, [&](Complex z) {
    const Substitution sub = substitute(which, f.eval(z), z);
    if (!sub.defined) return;
    report.conclusion_min = std::min(report.conclusion_min, sub.p.real());
  });
  report.conclusion_holds = report.conclusion_min > params.alpha;
  report.implication_violated =
      report.premise_min > report.beta + 0.01 &&
      report.conclusion_min < params.alpha - 1e-6;
  return report;
}

}  // namespace subordkit
