#include "subordkit/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "subordkit/errors.hpp"
#include "subordkit/parallel.hpp"

namespace subordkit {

namespace {

void validate_alpha_rho(double alpha, double rho) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw EvalError(ErrorKind::DomainParam, "alpha must lie in [0, 1)");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw EvalError(ErrorKind::DomainParam, "rho must lie in [0, 1]");
}

void validate_coupling(double alpha, double rho) {
  if (alpha <= 0.5 && rho < alpha * (1.0 + 2.0 * alpha))
    throw EvalError(ErrorKind::DomainParam,
                    "rho must be at least alpha(1+2 alpha) when alpha <= 1/2");
}

void validate_x(double x) {
  if (!(x > 0.0))
    throw EvalError(ErrorKind::DomainParam,
                    "boundary point needs x > 0");
}

[[noreturn]] void degenerate() {
  throw EvalError(ErrorKind::DomainParam, "degenerate parameters");
}

double checked_div(double num, double den) {
  if (den == 0.0) degenerate();
  return num / den;
}

void validate_region(const RegionGrid& grid) {
  if (grid.x_count < 1 || grid.my_count < 2)
    throw EvalError(ErrorKind::Config,
                    "region grid needs at least 1 x column and 2 my rows");
  if (!(grid.x_min > 0.0 && grid.x_max > grid.x_min))
    throw EvalError(ErrorKind::Config,
                    "region grid needs 0 < x_min < x_max");
  if (!(grid.my_floor < 0.0))
    throw EvalError(ErrorKind::Config, "region grid needs my_floor < 0");
}

double grid_x(const RegionGrid& grid, std::size_t i) {
  const double lg0 = std::log10(grid.x_min);
  const double lg1 = std::log10(grid.x_max);
  return std::pow(10.0, lg0 + static_cast<double>(i + 1) * (lg1 - lg0) /
                             static_cast<double>(grid.x_count));
}

/// The equality-sensitive quantities behind the i2/i3/i4 tests; a value of
/// exactly zero sits on the case boundary.
struct CaseMargins {
  double e2;  ///< alpha^2 - x^2 + rho*my          (i2: e2 > 0)
  double e3;  ///< x^2 - branch-3 threshold        (i3: e3 >= 0)
  double e4;  ///< alpha^2 + x^2 + rho*my          (i4: e4 <= 0)
};

CaseMargins case_margins(double alpha, double rho, const BoundaryPoint& pt) {
  const double x2 = pt.x * pt.x;
  const double a2 = alpha * alpha;
  const double thr = (2.0 * a2 - rho * (1.0 - alpha)) * (1.0 - alpha) /
                     (2.0 * (1.0 - alpha) + rho);
  return {a2 - x2 + rho * pt.my, x2 - thr, a2 + x2 + rho * pt.my};
}

}  // namespace

ThresholdParams::ThresholdParams(double gamma_, double alpha_, double mu_,
                                 double delta_, double rho_)
    : gamma(gamma_), alpha(alpha_), mu(mu_), delta(delta_), rho(rho_) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw EvalError(ErrorKind::DomainParam, "gamma must lie in [0, 1]");
  validate_alpha_rho(alpha, rho);
  if (!(mu >= 0.0 && mu <= 1.0))
    throw EvalError(ErrorKind::DomainParam, "mu must lie in [0, 1]");
  if (!(delta >= 1.0 && delta <= 2.0))
    throw EvalError(ErrorKind::DomainParam, "delta must lie in [1, 2]");
  validate_coupling(alpha, rho);
}

double boundary_my_bound(double alpha, double x) {
  validate_alpha_rho(alpha, 0.0);
  validate_x(x);
  return -(((1.0 - alpha) * (1.0 - alpha) + x * x) / (2.0 * (1.0 - alpha)));
}

CaseFlags case_flags(double alpha, double rho, const BoundaryPoint& pt) {
  validate_alpha_rho(alpha, rho);
  validate_x(pt.x);
  const CaseMargins m = case_margins(alpha, rho, pt);
  return {alpha <= 0.5, m.e2 > 0.0, m.e3 >= 0.0, m.e4 <= 0.0};
}

double beta0(double alpha, double rho, const CaseFlags& flags) {
  validate_alpha_rho(alpha, rho);
  if (flags.i1)
    return checked_div(alpha * (1.0 + alpha) * (1.0 - 2.0 * alpha),
                       rho * (1.0 - alpha) - 2.0 * alpha * alpha);
  if (flags.i2) return alpha;
  if (flags.i3)
    return alpha + checked_div(rho * (1.0 - rho) * (1.0 - alpha) *
                                   (2.0 * (1.0 - alpha) + rho),
                               16.0 * alpha *
                                   (2.0 * alpha * alpha - rho * (1.0 - alpha)));
  return alpha + checked_div(rho * (1.0 - rho), 16.0 * alpha * (1.0 - alpha)) *
                     ((2.0 * alpha * alpha - rho * (1.0 - alpha)) /
                      (2.0 * (1.0 - alpha) + rho));
}

double beta1(double alpha, double rho, const CaseFlags& flags) {
  validate_alpha_rho(alpha, rho);
  if (flags.i4) return alpha;
  if (flags.i1) {
    const double d1 = rho - 2.0 * (1.0 - alpha);
    return alpha +
           checked_div(2.0 * alpha * rho * rho * (1.0 - 2.0 * alpha),
                       d1 * d1 * (rho * (1.0 - alpha) - 2.0 * alpha * alpha));
  }
  if (flags.i2) {
    const double d2 = 2.0 * alpha * alpha - rho * (1.0 - alpha);
    return alpha + checked_div(alpha * rho * (1.0 - alpha) *
                                   (4.0 * alpha * alpha - rho * (1.0 - alpha)),
                               4.0 * d2 * d2);
  }
  const double d3 = 2.0 * (4.0 * alpha * alpha * (1.0 - alpha) +
                           rho * (2.0 * alpha - 1.0));
  if (flags.i3)
    return alpha + checked_div(alpha * rho * (1.0 - alpha) *
                                   (2.0 * (1.0 - alpha) + rho),
                               d3);
  return alpha + checked_div(alpha * rho *
                                 (2.0 * alpha * alpha - rho * (1.0 - alpha)),
                             d3);
}

double re_E0(double alpha, double rho, const BoundaryPoint& pt) {
  validate_alpha_rho(alpha, rho);
  validate_x(pt.x);
  const double a2 = alpha * alpha;
  const double x2 = pt.x * pt.x;
  const double c = a2 - x2 + rho * pt.my;
  const double d = c * c + 4.0 * a2 * x2;
  return alpha + (1.0 - rho) * pt.my * alpha * (a2 + x2 + rho * pt.my) / d;
}

double re_E1(double alpha, double rho, const BoundaryPoint& pt) {
  validate_alpha_rho(alpha, rho);
  validate_x(pt.x);
  const double a2 = alpha * alpha;
  const double x2 = pt.x * pt.x;
  const double c = a2 - x2 + rho * pt.my;
  const double d = c * c + 4.0 * a2 * x2;
  return alpha - alpha * rho * pt.my * (a2 + x2 + rho * pt.my) / d;
}

namespace {

Rational exact_denominator(const Rational& alpha, const Rational& rho,
                           const Rational& x, const Rational& my) {
  if (!(x > 0)) throw EvalError(ErrorKind::DomainParam,
                                "boundary point needs x > 0");
  const Rational c = alpha * alpha - x * x + rho * my;
  const Rational d = c * c + 4 * alpha * alpha * x * x;
  if (d == 0)
    throw EvalError(ErrorKind::DomainParam, "degenerate denominator");
  return d;
}

}  // namespace

Rational re_E0_exact(const Rational& alpha, const Rational& rho,
                     const Rational& x, const Rational& my) {
  const Rational d = exact_denominator(alpha, rho, x, my);
  const Rational s = alpha * alpha + x * x;
  return alpha + (1 - rho) * my * alpha * (s + rho * my) / d;
}

Rational re_E1_exact(const Rational& alpha, const Rational& rho,
                     const Rational& x, const Rational& my) {
  const Rational d = exact_denominator(alpha, rho, x, my);
  const Rational s = alpha * alpha + x * x;
  return alpha - alpha * rho * my * (s + rho * my) / d;
}

Rational re_E0_assembled(const Rational& alpha, const Rational& rho,
                         const Rational& x, const Rational& my) {
  const Rational d = exact_denominator(alpha, rho, x, my);
  // q (q^2 + my) with q = alpha + ix, divided by w = q^2 + rho*my; the real
  // part is Re(num * conj(w)) / |w|^2.
  const Rational num_re = alpha * alpha * alpha - 3 * alpha * x * x +
                          alpha * my;
  const Rational num_im = 3 * alpha * alpha * x - x * x * x + x * my;
  const Rational w_re = alpha * alpha - x * x + rho * my;
  const Rational w_im = 2 * alpha * x;
  return (num_re * w_re + num_im * w_im) / d;
}

Rational re_E1_assembled(const Rational& alpha, const Rational& rho,
                         const Rational& x, const Rational& my) {
  const Rational d = exact_denominator(alpha, rho, x, my);
  // q^3 / w, same conjugation trick.
  const Rational num_re = alpha * alpha * alpha - 3 * alpha * x * x;
  const Rational num_im = 3 * alpha * alpha * x - x * x * x;
  const Rational w_re = alpha * alpha - x * x + rho * my;
  const Rational w_im = 2 * alpha * x;
  return (num_re * w_re + num_im * w_im) / d;
}

double beta_at(double alpha, double rho, EndpointCase which,
               const BoundaryPoint& pt, bool* boundary_tie) {
  CaseFlags flags = case_flags(alpha, rho, pt);
  const CaseMargins m = case_margins(alpha, rho, pt);

  // Flags whose defining quantity sits exactly on its equality threshold can
  // be read either way; evaluate every adjacent branch and keep the largest.
  std::vector<bool CaseFlags::*> tied;
  if (m.e2 == 0.0) tied.push_back(&CaseFlags::i2);
  if (m.e3 == 0.0) tied.push_back(&CaseFlags::i3);
  if (m.e4 == 0.0) tied.push_back(&CaseFlags::i4);
  if (boundary_tie) *boundary_tie = !tied.empty();

  const auto eval = [&](const CaseFlags& f) {
    return which == EndpointCase::E0 ? beta0(alpha, rho, f)
                                     : beta1(alpha, rho, f);
  };
  double best = eval(flags);
  const std::size_t variants = std::size_t{1} << tied.size();
  for (std::size_t mask = 1; mask < variants; ++mask) {
    CaseFlags f = flags;
    for (std::size_t b = 0; b < tied.size(); ++b)
      if (mask & (std::size_t{1} << b)) f.*tied[b] = !(flags.*tied[b]);
    best = std::max(best, eval(f));
  }
  return best;
}

RegionalReport regional_oracle(double alpha, double rho, EndpointCase which,
                               const RegionGrid& grid) {
  validate_alpha_rho(alpha, rho);
  validate_coupling(alpha, rho);
  validate_region(grid);

  struct SliceState {
    double worst = -1e300;
    BoundaryPoint worst_point{0.0, 0.0};
    CaseFlags worst_flags{};
    std::vector<CaseFlags> cells;
    std::size_t samples = 0;
    std::size_t ties = 0;
    bool failed = false;
    std::string error;
  };
  std::vector<SliceState> slices(thread_count());

  parallel_slices(grid.x_count, [&](std::size_t begin, std::size_t end,
                                    std::size_t slice) {
    SliceState& st = slices[slice];
    for (std::size_t i = begin; i < end && !st.failed; ++i) {
      const double x = grid_x(grid, i);
      const double yb = boundary_my_bound(alpha, x);
      if (yb < grid.my_floor) continue;
      for (std::size_t j = 0; j < grid.my_count; ++j) {
        const BoundaryPoint pt{
            x, yb + (grid.my_floor - yb) * static_cast<double>(j) /
                        static_cast<double>(grid.my_count - 1)};
        try {
          const CaseFlags flags = case_flags(alpha, rho, pt);
          if (std::find(st.cells.begin(), st.cells.end(), flags) ==
              st.cells.end())
            st.cells.push_back(flags);
          bool tie = false;
          const double b = beta_at(alpha, rho, which, pt, &tie);
          if (tie) ++st.ties;
          const double v = which == EndpointCase::E0 ? re_E0(alpha, rho, pt)
                                                     : re_E1(alpha, rho, pt);
          ++st.samples;
          const double margin = v - b;
          if (margin > st.worst) {
            st.worst = margin;
            st.worst_point = pt;
            st.worst_flags = flags;
          }
        } catch (const EvalError& err) {
          st.failed = true;
          st.error = err.what();
          break;
        }
      }
    }
  });

  RegionalReport report{};
  report.worst_margin = -1e300;
  for (const SliceState& st : slices) {
    if (st.failed) throw EvalError(ErrorKind::DomainParam, st.error);
    if (st.samples > 0 && st.worst > report.worst_margin) {
      report.worst_margin = st.worst;
      report.worst_point = st.worst_point;
      report.worst_flags = st.worst_flags;
    }
    for (const CaseFlags& f : st.cells)
      if (std::find(report.cells.begin(), report.cells.end(), f) ==
          report.cells.end())
        report.cells.push_back(f);
    report.samples += st.samples;
    report.boundary_ties += st.ties;
  }
  if (report.samples == 0)
    throw EvalError(ErrorKind::Config,
                    "region grid is empty for these parameters");
  return report;
}

std::vector<CaseFlags> reachable_cases(double alpha, double rho,
                                       const RegionGrid& grid) {
  validate_alpha_rho(alpha, rho);
  validate_region(grid);
  std::vector<CaseFlags> cells;
  for (std::size_t i = 0; i < grid.x_count; ++i) {
    const double x = grid_x(grid, i);
    const double yb = boundary_my_bound(alpha, x);
    if (yb < grid.my_floor) continue;
    for (std::size_t j = 0; j < grid.my_count; ++j) {
      const BoundaryPoint pt{
          x, yb + (grid.my_floor - yb) * static_cast<double>(j) /
                      static_cast<double>(grid.my_count - 1)};
      const CaseFlags flags = case_flags(alpha, rho, pt);
      if (std::find(cells.begin(), cells.end(), flags) == cells.end())
        cells.push_back(flags);
    }
  }
  if (cells.empty())
    throw EvalError(ErrorKind::Config,
                    "region grid is empty for these parameters");
  return cells;
}

const std::vector<std::pair<double, double>>& case_coverage_design() {
  static const std::vector<std::pair<double, double>> design = {
      {0.05, 0.20}, {0.25, 0.50}, {0.30, 0.60}, {0.40, 0.90},
      {0.45, 0.99}, {0.49, 0.99}, {0.35, 0.75}, {0.75, 0.00},
      {0.90, 0.00}, {0.75, 1.00}, {0.90, 1.00}, {0.75, 0.30},
  };
  return design;
}

std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  grid.reserve(11);
  for (int k = 0; k <= 10; ++k)
    grid.push_back(1.0 + static_cast<double>(k) / 10.0);
  return grid;
}

SpiralReport spiral_re_check(double alpha, const std::vector<double>& delta_grid,
                             const RegionGrid& grid) {
  validate_alpha_rho(alpha, 0.0);
  validate_region(grid);
  if (delta_grid.empty())
    throw EvalError(ErrorKind::Config, "delta grid must not be empty");
  for (double d : delta_grid)
    if (!(d >= 1.0 && d <= 2.0))
      throw EvalError(ErrorKind::Config, "delta grid values must lie in [1, 2]");

  SpiralReport report{-1e300, 0.0, 0.0};
  for (double delta : delta_grid) {
    for (std::size_t i = 0; i < grid.x_count; ++i) {
      const double x = grid_x(grid, i);
      const double margin =
          std::pow(std::complex<double>(alpha, x), delta).real() - alpha;
      if (margin > report.worst_margin) {
        report.worst_margin = margin;
        report.worst_delta = delta;
        report.worst_x = x;
      }
    }
  }
  return report;
}

double combined_threshold(const ThresholdParams& params, EndpointCase which,
                          const BoundaryPoint& pt) {
  return params.gamma * params.alpha +
         (1.0 - params.gamma) * beta_at(params.alpha, params.rho, which, pt);
}

double threshold_sup(const ThresholdParams& params, EndpointCase which,
                     const RegionGrid& grid) {
  if (params.gamma == 1.0) return params.alpha;
  double sup = -1e300;
  for (const CaseFlags& flags : reachable_cases(params.alpha, params.rho, grid)) {
    const double b = which == EndpointCase::E0
                         ? beta0(params.alpha, params.rho, flags)
                         : beta1(params.alpha, params.rho, flags);
    sup = std::max(sup, b);
  }
  return params.gamma * params.alpha + (1.0 - params.gamma) * sup;
}

}  // namespace subordkit
