#include "subordkit/admiss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

constexpr double kPi = std::numbers::pi;

/// Radius of the excluded disk in the (theta, m) plane around the exp
/// case's denominator zeros at (+-pi, 2).
constexpr double kPoleDiskRadius = 0.05;

bool in_exp_pole_disk(double theta, double m) {
  const double d_pos = std::hypot(theta - kPi, m - 2.0);
  const double d_neg = std::hypot(theta + kPi, m - 2.0);
  return std::min(d_pos, d_neg) < kPoleDiskRadius;
}

void require_theta(AdmissCase c, double theta) {
  const auto [lo, hi] = admiss_theta_range(c);
  if (!(theta >= lo && theta <= hi)) {
    throw EvalError(ErrorKind::DomainParam,
                    "theta outside the " + std::string(to_string(c)) +
                        " parameter interval");
  }
}

void require_m(double m) {
  if (!(m >= 1.0)) {
    throw EvalError(ErrorKind::DomainParam, "tangent multiplier m must be >= 1");
  }
}

/// Midpoint grid of n angles over the case's theta interval.
std::vector<double> theta_grid(AdmissCase c, std::size_t n) {
  if (n == 0) {
    throw EvalError(ErrorKind::Config, "theta grid must be nonempty");
  }
  const auto [lo, hi] = admiss_theta_range(c);
  std::vector<double> grid;
  grid.reserve(n);
  const double step = (hi - lo) / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    grid.push_back(lo + (static_cast<double>(j) + 0.5) * step);
  }
  return grid;
}

}  // namespace

const char* to_string(AdmissCase c) noexcept {
  switch (c) {
    case AdmissCase::Exp: return "exp-target";
    case AdmissCase::Sqrt: return "sqrt-target";
    case AdmissCase::Sigmoid: return "sigmoid-target";
  }
  return "unknown";
}

AdmissCase parse_admiss_case(const std::string& name) {
  if (name == "exp-target" || name == "exp") return AdmissCase::Exp;
  if (name == "sqrt-target" || name == "sqrt") return AdmissCase::Sqrt;
  if (name == "sigmoid-target" || name == "sigmoid") return AdmissCase::Sigmoid;
  throw EvalError(ErrorKind::Config, "unknown admissibility case: " + name);
}

TargetDomain admiss_target(AdmissCase c) {
  switch (c) {
    case AdmissCase::Exp: return TargetDomain::exp_dom();
    case AdmissCase::Sqrt: return TargetDomain::sqrt_dom();
    case AdmissCase::Sigmoid: break;
  }
  return TargetDomain::sigmoid_dom();
}

std::pair<double, double> admiss_theta_range(AdmissCase c) {
  if (c == AdmissCase::Sqrt) return {-kPi / 4.0, kPi / 4.0};
  return {-kPi, kPi};
}

std::vector<std::string> default_omega_names(AdmissCase c) {
  switch (c) {
    case AdmissCase::Exp:
      return {"sqrt", "sigmoid", "crescent", "sine", "cardioid-poly"};
    case AdmissCase::Sqrt: return {"sigmoid"};
    case AdmissCase::Sigmoid: break;
  }
  return {"sqrt"};
}

Complex psi_harmonic(Complex a, Complex b) {
  const Complex den = 2.0 * a + b;
  if (den == Complex{}) {
    throw EvalError(ErrorKind::Pole, "psi_harmonic pole: 2a + b = 0");
  }
  return 2.0 * a * (a + b) / den;
}

Complex boundary_r(AdmissCase c, double theta) {
  require_theta(c, theta);
  const Complex zeta = std::polar(1.0, theta);
  switch (c) {
    case AdmissCase::Exp: return std::exp(zeta);
    case AdmissCase::Sqrt: {
      const double rho_sq = 2.0 * std::cos(2.0 * theta);
      return std::sqrt(std::max(rho_sq, 0.0)) * zeta;
    }
    case AdmissCase::Sigmoid: break;
  }
  return 2.0 / (1.0 + std::exp(-zeta));
}

Complex boundary_s(AdmissCase c, double theta, double m) {
  require_theta(c, theta);
  require_m(m);
  const Complex zeta = std::polar(1.0, theta);
  switch (c) {
    case AdmissCase::Exp: return m * boundary_r(c, theta) * zeta;
    case AdmissCase::Sqrt: {
      const double rho_sq = 2.0 * std::cos(2.0 * theta);
      if (rho_sq <= 0.0) {
        throw EvalError(ErrorKind::Pole,
                        "tangent datum singular at the lemniscate node");
      }
      return m * zeta / (2.0 * std::sqrt(rho_sq));
    }
    case AdmissCase::Sigmoid: break;
  }
  const Complex w = std::exp(-zeta);
  const Complex one_plus = 1.0 + w;
  return 2.0 * m * zeta * w / (one_plus * one_plus);
}

double example_g(AdmissCase c, double theta, double m) {
  require_theta(c, theta);
  require_m(m);
  const double co = std::cos(theta);
  const double sn = std::sin(theta);
  switch (c) {
    case AdmissCase::Exp: {
      const double den = m * m + 4.0 * m * co + 4.0;
      if (std::abs(den) < 1e-12) {
        throw EvalError(ErrorKind::Pole,
                        "exp-target denominator vanishes at (theta, m) = "
                        "(+-pi, 2)");
      }
      const double num =
          (m * m + 3.0 * m * co + 2.0) * std::cos(sn) - m * sn * std::sin(sn);
      return 2.0 * std::exp(co) * num / den;
    }
    case AdmissCase::Sqrt: {
      const double c2 = std::cos(2.0 * theta);
      const double rho = std::sqrt(std::max(2.0 * c2, 0.0));
      return 2.0 * rho * co * (m + 4.0 * c2) / (m + 8.0 * c2);
    }
    case AdmissCase::Sigmoid: break;
  }
  const double ec = std::exp(co);
  const double ec2 = ec * ec;
  const double ec3 = ec2 * ec;
  const double num =
      m * m * ec + m * m * std::cos(sn) + 5.0 * m * ec * co +
      3.0 * m * ec2 * std::cos(theta - sn) + m * std::cos(theta - sn) +
      2.0 * m * std::cos(theta + sn) + m * ec * std::cos(theta - 2.0 * sn) +
      4.0 * ec + 2.0 * ec3 + 6.0 * ec2 * std::cos(sn) + 2.0 * std::cos(sn) +
      2.0 * ec * std::cos(2.0 * sn);
  const double den =
      (1.0 + ec2 + 2.0 * ec * std::cos(sn)) *
      (4.0 + m * m + 4.0 * ec2 + 4.0 * m * co + 8.0 * ec * std::cos(sn) +
       4.0 * m * ec * std::cos(theta - sn));
  return 4.0 * ec * num / den;
}

double g_consistency(AdmissCase c, std::size_t theta_n, std::size_t m_n) {
  if (theta_n == 0 || m_n == 0) {
    throw EvalError(ErrorKind::Config, "consistency grid must be nonempty");
  }
  const std::vector<double> thetas = theta_grid(c, theta_n);
  std::vector<double> ms;
  ms.reserve(m_n);
  if (m_n == 1) {
    ms.push_back(1.0);
  } else {
    for (std::size_t i = 0; i < m_n; ++i) {
      ms.push_back(1.0 + 19.0 * static_cast<double>(i) /
                             static_cast<double>(m_n - 1));
    }
  }
  double worst = 0.0;
  for (double theta : thetas) {
    for (double m : ms) {
      if (c == AdmissCase::Exp && in_exp_pole_disk(theta, m)) continue;
      const Complex psi = psi_harmonic(boundary_r(c, theta),
                                       boundary_s(c, theta, m));
      worst = std::max(worst, std::abs(example_g(c, theta, m) - psi.real()));
    }
  }
  return worst;
}

std::vector<double> default_m_sweep(double m_max) {
  if (!(m_max >= 1.0)) {
    throw EvalError(ErrorKind::Config, "m sweep upper bound must be >= 1");
  }
  std::vector<double> sweep;
  for (double m = 1.0; m <= m_max + 1e-12; m += 0.25) sweep.push_back(m);
  return sweep;
}

namespace {

/// Walks the (theta, m) grid in sorted order and hands every surviving
/// sample (asymptote rows carry m = +infinity) to the sink.
template <typename Sink>
void walk_scan(AdmissCase c, std::size_t theta_n,
               const std::vector<double>& m_sweep, std::size_t& excluded,
               std::size_t& samples, Sink&& sink) {
  if (m_sweep.empty()) {
    throw EvalError(ErrorKind::Config, "m sweep must be nonempty");
  }
  for (double m : m_sweep) require_m(m);
  for (double theta : theta_grid(c, theta_n)) {
    for (double m : m_sweep) {
      if (c == AdmissCase::Exp && in_exp_pole_disk(theta, m)) {
        ++excluded;
        continue;
      }
      ++samples;
      sink(theta, m,
           psi_harmonic(boundary_r(c, theta), boundary_s(c, theta, m)));
    }
    ++samples;
    sink(theta, std::numeric_limits<double>::infinity(),
         2.0 * boundary_r(c, theta));
  }
}

}  // namespace

std::vector<ScanEntry> scan_case(AdmissCase c, const TargetDomain& omega,
                                 std::size_t theta_n,
                                 const std::vector<double>& m_sweep) {
  std::vector<ScanEntry> entries;
  entries.reserve(theta_n * (m_sweep.size() + 1));
  std::size_t excluded = 0;
  std::size_t samples = 0;
  walk_scan(c, theta_n, m_sweep, excluded, samples,
            [&](double theta, double m, Complex psi) {
              entries.push_back(
                  {theta, m, psi, omega.name(), omega.contains(psi)});
            });
  return entries;
}

ScanReport admissibility_scan(AdmissCase c,
                              const std::vector<TargetDomain>& omegas,
                              std::size_t theta_n,
                              const std::vector<double>& m_sweep) {
  if (omegas.empty()) {
    throw EvalError(ErrorKind::Config, "scan needs at least one exclusion set");
  }
  ScanReport report;
  walk_scan(c, theta_n, m_sweep, report.excluded, report.samples,
            [&](double theta, double m, Complex psi) {
              for (const TargetDomain& omega : omegas) {
                const Containment verdict = omega.contains(psi);
                if (verdict == Containment::Inside) {
                  report.violations.push_back(
                      {theta, m, psi, omega.name(), verdict});
                } else if (verdict == Containment::Boundary) {
                  report.boundary_contacts.push_back(
                      {theta, m, psi, omega.name(), verdict});
                }
              }
            });
  return report;
}

}  // namespace subordkit
