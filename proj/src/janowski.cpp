#include "subordkit/janowski.hpp"

#include <algorithm>
#include <cmath>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

void require_k(const Rational& k) {
  if (k < 1) {
    throw EvalError(ErrorKind::DomainParam, "multiplier k must be >= 1");
  }
}

void require_k(double k) {
  if (!(k >= 1.0)) {
    throw EvalError(ErrorKind::DomainParam, "multiplier k must be >= 1");
  }
}

template <typename T>
SpiralCoeffs<T> coeffs_impl(const T& a, const T& b, const T& d, const T& e,
                            const T& k) {
  SpiralCoeffs<T> c;
  c.l = k + 2;
  c.m = 2 * (a + b) + k * (2 * a - b);
  c.n = 2 * a * b;
  c.g = 2 * (e - d);
  c.h = 2 * a * e * (k + 2) - 2 * b * e * (k - 1) - a * d * (k + 2) +
        b * d * (k - 4);
  c.i = 2 * a * a * e * (k + 1) - 2 * a * b * e * (k - 2) -
        a * b * d * (k + 4) + b * b * d * (k - 2);
  c.j = 2 * a * a * b * e - 2 * a * b * b * d;
  return c;
}

Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

const Rational& monotone_tol() {
  static const Rational tol = Rational(1) / Rational(1000000000000LL);
  return tol;
}

}  // namespace

JanowskiQuad::JanowskiQuad(Rational a_in, Rational b_in, Rational d_in,
                           Rational e_in)
    : a(std::move(a_in)), b(std::move(b_in)), d(std::move(d_in)),
      e(std::move(e_in)) {
  if (!valid(a, b, d, e)) {
    throw EvalError(ErrorKind::DomainParam,
                    "quadruple must satisfy -1 <= b < a <= 1 and "
                    "-1 <= e < d <= 1");
  }
}

bool JanowskiQuad::valid(const Rational& a, const Rational& b,
                         const Rational& d, const Rational& e) {
  return b >= -1 && b < a && a <= 1 && e >= -1 && e < d && d <= 1;
}

SpiralCoeffs<Rational> spiral_coeffs(const JanowskiQuad& q,
                                     const Rational& k) {
  require_k(k);
  return coeffs_impl<Rational>(q.a, q.b, q.d, q.e, k);
}

SpiralCoeffs<double> spiral_coeffs_f(const JanowskiQuad& q, double k) {
  require_k(k);
  return coeffs_impl<double>(rational_to_double(q.a), rational_to_double(q.b),
                             rational_to_double(q.d), rational_to_double(q.e),
                             k);
}

std::pair<Rational, Rational> spiral_slopes(const JanowskiQuad& q) {
  const Rational diff = q.a - q.b;
  return {Rational(diff * (2 * q.e - q.d)),
          Rational(diff * (2 * q.a * q.e - q.b * q.d))};
}

double min_quad(double a, double b, double c) {
  if (a > 0.0 && std::abs(b) < 2.0 * a) {
    return (4.0 * a * c - b * b) / (4.0 * a);
  }
  return a - std::abs(b) + c;
}

std::vector<Rational> default_k_range() {
  return rational_grid(Rational(1), Rational(100), Rational(1));
}

std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi,
                                    const Rational& step) {
  if (step <= 0 || lo > hi) {
    throw EvalError(ErrorKind::Config,
                    "grid needs a positive step and lo <= hi");
  }
  std::vector<Rational> grid;
  for (Rational v = lo; v <= hi; v += step) grid.push_back(v);
  return grid;
}

bool cond2_at(const JanowskiQuad& q, const Rational& k) {
  const SpiralCoeffs<Rational> c = spiral_coeffs(q, k);
  const Rational lhs =
      c.g * c.h + c.h * c.i - 3 * c.g * c.j + c.i * c.j + 12 * c.g * c.j;
  const Rational rhs = 4 * rational_abs(Rational(c.g * c.i + c.h * c.j));
  return lhs >= rhs;
}

ConditionReport check_conditions(const JanowskiQuad& q,
                                 const std::vector<Rational>& k_range) {
  if (k_range.empty()) {
    throw EvalError(ErrorKind::Config, "k range must be nonempty");
  }
  ConditionReport report;
  report.cond3_margin = 2 * q.e * (1 + q.a) - q.d * (1 + q.b);
  report.cond3 = report.cond3_margin > 0;

  report.cond2_all = true;
  report.cond2_by_k.reserve(k_range.size());
  for (const Rational& k : k_range) {
    const bool ok = cond2_at(q, k);
    report.cond2_by_k.emplace_back(k, ok);
    report.cond2_all = report.cond2_all && ok;
  }
  const auto [h1, i1] = spiral_slopes(q);
  const Rational lead = h1 * i1;
  report.cond2_asymptote_sign = lead > 0 ? 1 : (lead < 0 ? -1 : 0);

  const Rational lhs4 =
      3 + 2 * q.a * q.b +
      q.d * (q.b + 1) * (q.a * (2 * q.b + 3) + q.b + 2);
  const Rational rhs4 =
      2 * q.e * (q.a + 1) * (q.a * (q.b + 2) + 1) +
      rational_abs(Rational(4 * q.a + q.b));
  report.cond4_margin = lhs4 - rhs4;
  report.cond4 = report.cond4_margin >= 0;
  return report;
}

bool cond2_at_f(const JanowskiQuad& q, double k) {
  const SpiralCoeffs<double> c = spiral_coeffs_f(q, k);
  const double lhs =
      c.g * c.h + c.h * c.i - 3.0 * c.g * c.j + c.i * c.j + 12.0 * c.g * c.j;
  return lhs >= 4.0 * std::abs(c.g * c.i + c.h * c.j);
}

bool cond3_f(const JanowskiQuad& q) {
  const double a = rational_to_double(q.a);
  const double b = rational_to_double(q.b);
  const double d = rational_to_double(q.d);
  const double e = rational_to_double(q.e);
  return 2.0 * e * (1.0 + a) - d * (1.0 + b) > 0.0;
}

bool cond4_f(const JanowskiQuad& q) {
  const double a = rational_to_double(q.a);
  const double b = rational_to_double(q.b);
  const double d = rational_to_double(q.d);
  const double e = rational_to_double(q.e);
  const double lhs = 3.0 + 2.0 * a * b +
                     d * (b + 1.0) * (a * (2.0 * b + 3.0) + b + 2.0);
  const double rhs = 2.0 * e * (a + 1.0) * (a * (b + 2.0) + 1.0) +
                     std::abs(4.0 * a + b);
  return lhs >= rhs;
}

double modulus_sq_quadratic(double l, double m, double n, double theta) {
  const double c = std::cos(theta);
  return l * l + m * m + n * n - 2.0 * l * n + 2.0 * (l + n) * m * c +
         4.0 * l * n * c * c;
}

double modulus_sq_cubic(double g, double h, double i, double j,
                        double theta) {
  const double c = std::cos(theta);
  return g * g + h * h + i * i + j * j - 2.0 * g * i - 2.0 * h * j +
         (2.0 * g * h + 2.0 * h * i - 6.0 * g * j + 2.0 * i * j) * c +
         (4.0 * g * i + 4.0 * h * j) * c * c + 8.0 * g * j * c * c * c;
}

double boundary_ratio(const JanowskiQuad& q, double k, double theta) {
  const SpiralCoeffs<double> c = spiral_coeffs_f(q, k);
  const double num_sq =
      std::max(modulus_sq_quadratic(c.l, c.m, c.n, theta), 0.0);
  const double den_sq = modulus_sq_cubic(c.g, c.h, c.i, c.j, theta);
  if (!(den_sq > 1e-28)) {
    throw EvalError(ErrorKind::Pole,
                    "boundary ratio denominator modulus below 1e-14");
  }
  const double diff = rational_to_double(Rational(q.a - q.b));
  return diff * std::sqrt(num_sq / den_sq);
}

BoundResult final_bound(const JanowskiQuad& q) {
  BoundResult result;
  const Rational num =
      3 + 2 * q.a * q.b - rational_abs(Rational(4 * q.a + q.b));
  const Rational den =
      2 * q.e * (q.a + 1) * (q.a * (q.b + 2) + 1) -
      q.d * (q.b + 1) * (q.a * (2 * q.b + 3) + q.b + 2);
  if (den <= 0) return result;
  result.applicable = true;
  result.value = num / den;
  return result;
}

Rational psi_k(const JanowskiQuad& q, const Rational& k) {
  const SpiralCoeffs<Rational> c = spiral_coeffs(q, k);
  const Rational den = c.g + c.h + c.i + c.j;
  if (den == 0) {
    throw EvalError(ErrorKind::Pole, "psi denominator sum vanishes");
  }
  const Rational ratio = (c.l - rational_abs(c.m) + c.n) / den;
  return ratio * ratio;
}

std::vector<Rational> default_psi_grid() {
  return rational_grid(Rational(1), Rational(100), Rational(1, 10));
}

MonotoneReport psi_k_monotone(const JanowskiQuad& q,
                              const std::vector<Rational>& k_grid) {
  if (k_grid.empty()) {
    throw EvalError(ErrorKind::Config, "psi grid must be nonempty");
  }
  const Rational cond3 = 2 * q.e * (1 + q.a) - q.d * (1 + q.b);
  if (cond3 <= 0) {
    throw EvalError(ErrorKind::DomainParam,
                    "psi monotonicity scan requires the positivity condition");
  }
  MonotoneReport report;
  report.nondecreasing = true;
  report.at_least_first = true;
  std::vector<Rational> values;
  values.reserve(k_grid.size());
  for (const Rational& k : k_grid) values.push_back(psi_k(q, k));
  const Rational& tol = monotone_tol();
  for (std::size_t idx = 1; idx < values.size(); ++idx) {
    if (values[idx] < values[idx - 1] - tol) {
      report.nondecreasing = false;
      if (!report.first_drop_k) {
        report.first_drop_k = rational_to_double(k_grid[idx]);
      }
    }
    if (values[idx] < values.front() - tol) report.at_least_first = false;
  }
  report.psi_values.reserve(values.size());
  for (const Rational& v : values) {
    report.psi_values.push_back(rational_to_double(v));
  }
  return report;
}

std::vector<FeasibilityHit> feasibility_scan(
    const std::vector<Rational>& a_grid, const std::vector<Rational>& b_grid,
    const std::vector<Rational>& d_grid, const std::vector<Rational>& e_grid,
    const std::vector<Rational>& k_range) {
  if (k_range.empty()) {
    throw EvalError(ErrorKind::Config, "k range must be nonempty");
  }
  std::vector<FeasibilityHit> hits;
  for (const Rational& a : a_grid) {
    for (const Rational& b : b_grid) {
      for (const Rational& d : d_grid) {
        for (const Rational& e : e_grid) {
          if (!JanowskiQuad::valid(a, b, d, e)) continue;
          const Rational cond3 = 2 * e * (1 + a) - d * (1 + b);
          if (cond3 <= 0) continue;
          const JanowskiQuad quad(a, b, d, e);
          const BoundResult bound = final_bound(quad);
          if (!bound.applicable || bound.value < 1) continue;
          const Rational lhs4 =
              3 + 2 * a * b + d * (b + 1) * (a * (2 * b + 3) + b + 2);
          const Rational rhs4 =
              2 * e * (a + 1) * (a * (b + 2) + 1) +
              rational_abs(Rational(4 * a + b));
          if (lhs4 - rhs4 < 0) continue;
          bool ring_ok = true;
          for (const Rational& k : k_range) {
            if (!cond2_at(quad, k)) {
              ring_ok = false;
              break;
            }
          }
          if (!ring_ok) continue;
          hits.push_back({quad, bound.value});
        }
      }
    }
  }
  return hits;
}

std::vector<FeasibilityHit> feasibility_scan() {
  return feasibility_scan(
      rational_grid(Rational(-1), Rational(1), Rational(1, 8)),
      rational_grid(Rational(-1), Rational(1), Rational(1, 4)),
      rational_grid(Rational(-1), Rational(1), Rational(1, 2)),
      rational_grid(Rational(-1), Rational(1), Rational(1, 16)));
}

}  // namespace subordkit
