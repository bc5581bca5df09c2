#include "subordkit/means.hpp"

#include <array>
#include <cmath>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

void check_weight(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw EvalError(ErrorKind::DomainParam, "mean weight must lie in [0, 1]");
}

bool is_exact_zero(Complex w) { return w.real() == 0.0 && w.imag() == 0.0; }

bool on_cut(Complex w) { return w.imag() == 0.0 && w.real() < 0.0; }

/// Factor x^e for the geometric mean: exact collapses for e in {0, 1},
/// principal branch otherwise.
Complex power_factor(Complex x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (on_cut(x))
    throw EvalError(ErrorKind::BranchCut, "geometric-mean argument on the cut");
  if (is_exact_zero(x)) {
    if (e > 0.0) return 0.0;
    throw EvalError(ErrorKind::Pole, "zero base with non-positive exponent");
  }
  return std::pow(x, e);
}

}  // namespace

Complex arith_mean(double t, Complex x, Complex y) {
  check_weight(t);
  return (1.0 - t) * x + t * y;
}

Complex geo_mean(double t, Complex x, Complex y) {
  check_weight(t);
  if (x == y) return x;  // idempotence holds for any weight
  return power_factor(x, t) * power_factor(y, 1.0 - t);
}

MeanValue harm_mean(double t, Complex x, Complex y) {
  check_weight(t);
  if (x == y) return {x, MeanFlag::Regular};
  if (t == 0.0) return {y, MeanFlag::Regular};  // xy/x collapse
  if (t == 1.0) return {x, MeanFlag::Regular};
  const Complex num = x * y;
  const Complex den = t * y + (1.0 - t) * x;
  if (is_exact_zero(den)) {
    if (is_exact_zero(num)) return {Complex(0.0), MeanFlag::Regular};
    throw EvalError(ErrorKind::Pole, "harmonic-mean denominator vanishes");
  }
  const MeanFlag flag = std::abs(den) < kDenominatorEpsilon * (std::abs(x) + std::abs(y))
                            ? MeanFlag::NearSingular
                            : MeanFlag::Regular;
  return {num / den, flag};
}

ThetaPhiPair::ThetaPhiPair(AnalyticMap theta, AnalyticMap phi)
    : theta_(std::move(theta)), phi_(std::move(phi)) {
  const Complex at_zero = theta_.value(Complex(0.0));
  if (std::abs(at_zero - Complex(1.0)) > 1e-12)
    throw EvalError(ErrorKind::DomainParam, "theta(0) must equal 1");
}

ThetaPhiPair ThetaPhiPair::ones() {
  return ThetaPhiPair(AnalyticMap::constant(1.0), AnalyticMap::constant(1.0));
}

Complex p_operator(const ThetaPhiPair& pair, const AnalyticMap& f, double t,
                   Complex z) {
  check_weight(t);
  const Jet fj = f.eval(z);
  const Complex theta = pair.theta().value(z);
  const Complex phi = pair.phi().value(z);
  return (1.0 - t + t * theta) * fj.f + t * phi * z * fj.df;
}

MeanValue h_operator(const ThetaPhiPair& pair, const AnalyticMap& f, double t,
                     Complex z) {
  check_weight(t);
  if (f.is_zero()) return {Complex(0.0), MeanFlag::Regular};

  const Complex p0 = p_operator(pair, f, 0.0, z);
  const Complex p1 = p_operator(pair, f, 1.0, z);
  const Complex den = p_operator(pair, f, 1.0 - t, z);
  const double scale = std::abs(p0) + std::abs(p1);

  if (!is_exact_zero(den) && std::abs(den) >= kDenominatorEpsilon * scale)
    return {p0 * p1 / den, MeanFlag::Regular};

  // Limit branch: approach z along 4 rays, Richardson-extrapolate the ratio
  // along each (distances shrink by 10, so two stages remove the first- and
  // second-order terms), then require the rays to agree.
  static constexpr std::array<Complex, 4> directions = {
      Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-1.0, 0.0),
      Complex(0.0, -1.0)};
  static constexpr std::array<double, 3> distances = {1e-3, 1e-4, 1e-5};
  if (std::abs(z) + distances[0] >= 1.0)
    throw EvalError(ErrorKind::Runtime,
                    "limit branch needs z at distance > 1e-3 from the boundary");

  std::array<Complex, 4> limits;
  for (std::size_t r = 0; r < directions.size(); ++r) {
    std::array<Complex, 3> values;
    for (std::size_t d = 0; d < distances.size(); ++d) {
      const Complex zeta = z + distances[d] * directions[r];
      const Complex q0 = p_operator(pair, f, 0.0, zeta);
      const Complex q1 = p_operator(pair, f, 1.0, zeta);
      const Complex qd = p_operator(pair, f, 1.0 - t, zeta);
      if (is_exact_zero(qd))
        throw EvalError(ErrorKind::NonRemovable,
                        "denominator vanishes along the approach ray");
      values[d] = q0 * q1 / qd;
    }
    const Complex stage1 = (10.0 * values[1] - values[0]) / 9.0;
    const Complex stage2 = (10.0 * values[2] - values[1]) / 9.0;
    limits[r] = (100.0 * stage2 - stage1) / 99.0;
    if (!std::isfinite(limits[r].real()) || !std::isfinite(limits[r].imag()))
      throw EvalError(ErrorKind::NonRemovable,
                      "limit diverges along an approach ray");
  }

  Complex mean(0.0);
  double magnitude = 0.0;
  for (const Complex& value : limits) {
    mean += value;
    magnitude = std::max(magnitude, std::abs(value));
  }
  mean /= static_cast<double>(limits.size());
  const double reference = std::max(1.0, magnitude);
  for (const Complex& value : limits)
    if (std::abs(value - mean) > 1e-6 * reference)
      throw EvalError(ErrorKind::NonRemovable,
                      "ray limits disagree: singularity is not removable");
  return {mean, MeanFlag::LimitBranch};
}

}  // namespace subordkit
