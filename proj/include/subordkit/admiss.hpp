#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "subordkit/domains.hpp"
#include "subordkit/fncat.hpp"

namespace subordkit {

/// The three worked admissibility cases, named by their target domain.
enum class AdmissCase { Exp, Sqrt, Sigmoid };

const char* to_string(AdmissCase c) noexcept;
AdmissCase parse_admiss_case(const std::string& name);

/// Target domain of a case (exp, sqrt, or sigmoid).
TargetDomain admiss_target(AdmissCase c);

/// Admissible parameter interval for theta: [-pi, pi] for the exp and
/// sigmoid cases, [-pi/4, pi/4] for the sqrt case.
std::pair<double, double> admiss_theta_range(AdmissCase c);

/// Default exclusion-set names scanned against the exp case.
std::vector<std::string> default_omega_names(AdmissCase c);

/// Harmonic-mean admissibility functional 2a(a+b)/(2a+b).
/// Throws EvalError(Pole) when 2a+b is exactly zero.
Complex psi_harmonic(Complex a, Complex b);

/// Boundary value r(theta) of the case's target and the matched tangent
/// datum s(theta, m), m >= 1, entering psi_harmonic(r, s).
Complex boundary_r(AdmissCase c, double theta);
Complex boundary_s(AdmissCase c, double theta, double m);

/// Re psi_harmonic(r(theta), s(theta, m)) through the case's closed form.
/// Validates theta against the case interval and m >= 1; the exp case
/// throws EvalError(Pole) where its denominator m^2 + 4m cos(theta) + 4
/// vanishes (m = 2, theta = +-pi).
double example_g(AdmissCase c, double theta, double m);

/// Max over a (theta_n x m_n) pole-avoiding grid of
/// |example_g - Re psi_harmonic(r, s)|: the closed forms against direct
/// complex evaluation.
double g_consistency(AdmissCase c, std::size_t theta_n = 1024,
                     std::size_t m_n = 16);

/// One scanned sample: parameters, the complex functional value, the
/// exclusion set it was tested against, and the membership verdict.
/// m is +infinity for the large-m asymptote row psi -> 2 r(theta).
struct ScanEntry {
  double theta = 0.0;
  double m = 0.0;
  Complex psi{};
  std::string omega;
  Containment verdict = Containment::Outside;
};

struct ScanReport {
  /// Samples falling strictly inside an exclusion set (violations of the
  /// claimed avoidance), in (theta, m, omega) scan order.
  std::vector<ScanEntry> violations;
  /// Samples within the boundary band of an exclusion set; never counted
  /// as violations.
  std::vector<ScanEntry> boundary_contacts;
  std::size_t excluded = 0;  ///< samples inside the declared pole disk
  std::size_t samples = 0;   ///< evaluated (theta, m) pairs
};

/// Default m sweep {1, 1.25, ..., 20}; the scan appends the m -> infinity
/// asymptote row separately.
std::vector<double> default_m_sweep(double m_max = 20.0);

/// Every sample of a (theta-grid x m-sweep + asymptote) scan against one
/// exclusion set, in (theta, m) order. Midpoint theta grid over the case
/// interval; the exp case skips a radius-0.05 disk around its poles at
/// (theta, m) = (+-pi, 2).
std::vector<ScanEntry> scan_case(AdmissCase c, const TargetDomain& omega,
                                 std::size_t theta_n,
                                 const std::vector<double>& m_sweep);

/// Aggregate scan against a list of exclusion sets.
ScanReport admissibility_scan(AdmissCase c,
                              const std::vector<TargetDomain>& omegas,
                              std::size_t theta_n = 1024,
                              const std::vector<double>& m_sweep =
                                  default_m_sweep());

}  // namespace subordkit
