#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "subordkit/errors.hpp"
#include "subordkit/fncat.hpp"
#include "subordkit/rng.hpp"

using subordkit::AnalyticMap;
using subordkit::Complex;
using subordkit::ErrorKind;
using subordkit::EvalError;
using subordkit::Jet;
using subordkit::SplitMix64;

namespace {

void check_jet(const Jet& jet, Complex f, Complex df, Complex d2f,
               double tol = 1e-15) {
  CHECK(std::abs(jet.f - f) <= tol);
  CHECK(std::abs(jet.df - df) <= tol);
  CHECK(std::abs(jet.d2f - d2f) <= tol);
}

ErrorKind thrown_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("expected EvalError");
  return ErrorKind::Runtime;
}

}  // namespace

TEST_SUITE("fncat") {

TEST_CASE("taylor jets at the origin") {
  check_jet(AnalyticMap::exp_map().eval(0.0), 1.0, 1.0, 1.0);
  check_jet(AnalyticMap::sqrt1p().eval(0.0), 1.0, 0.5, -0.25);
  check_jet(AnalyticMap::moebius(Complex(3.0 / 8.0), Complex(0.0)).eval(0.0),
            1.0, 3.0 / 8.0, 0.0);
}

TEST_CASE("catalog jets against independent closed forms") {
  const Complex z(0.3, -0.2);

  // (1+Az)/(1+Bz) with A=1/2, B=-1/3; derivatives computed by hand.
  const Complex a(0.5), b(-1.0 / 3.0);
  const Complex den = 1.0 + b * z;
  check_jet(AnalyticMap::moebius(a, b).eval(z), (1.0 + a * z) / den,
            (a - b) / (den * den), -2.0 * b * (a - b) / (den * den * den),
            1e-14);

  const Complex e = std::exp(-z);
  const Complex s = 1.0 + e;
  check_jet(AnalyticMap::sigmoid().eval(z), 2.0 / s, 2.0 * e / (s * s),
            2.0 * e * (e - 1.0) / (s * s * s), 1e-14);

  check_jet(AnalyticMap::sine1p().eval(z), 1.0 + std::sin(z), std::cos(z),
            -std::sin(z), 1e-14);

  const Complex q = std::sqrt(1.0 + z * z);
  check_jet(AnalyticMap::crescent().eval(z), z + q, 1.0 + z / q,
            1.0 / (q * q * q), 1e-14);

  const double gamma = 0.5;
  const Complex base = (1.0 + z) / (1.0 - z);
  const Complex w = std::pow(base, gamma);
  const Complex inner_df = 2.0 / ((1.0 - z) * (1.0 - z));
  const AnalyticMap pw =
      AnalyticMap::power(AnalyticMap::moebius(1.0, -1.0), gamma);
  const Jet jet = pw.eval(z);
  CHECK(std::abs(jet.f - w) <= 1e-14);
  CHECK(std::abs(jet.df - gamma * w / base * inner_df) <= 1e-14);
}

TEST_CASE("finite-difference residual oracle examples") {
  const AnalyticMap exp = AnalyticMap::exp_map();
  CHECK(subordkit::fd_residual(exp, Complex(0.3, 0.1), 1e-5) <= 1e-6);

  const AnalyticMap c = AnalyticMap::constant(Complex(2.0, -1.0));
  CHECK(subordkit::fd_residual(c, Complex(0.4, 0.2), 1e-5) == 0.0);

  const AnalyticMap p = AnalyticMap::polynomial({1.0, 1.0, 1.0});
  CHECK(subordkit::fd_residual(p, Complex(0.0), 1e-5) <= 1e-9);

  CHECK(thrown_kind([&] { subordkit::fd_residual(exp, Complex(0.5), 1e-20); }) ==
        ErrorKind::StepUnderflow);
  CHECK(thrown_kind([&] { subordkit::fd_residual(exp, Complex(0.5), -1e-5); }) ==
        ErrorKind::DomainParam);
}

TEST_CASE("finite-difference residual across the catalog") {
  // Representative instance of every constructor, evaluated at random
  // interior points kept clear of poles and cuts.
  struct Case {
    const char* name;
    AnalyticMap map;
    double radius;
  };
  const AnalyticMap z = AnalyticMap::identity();
  const std::vector<Case> cases = {
      {"constant", AnalyticMap::constant(Complex(1.5, -0.5)), 0.95},
      {"identity", z, 0.95},
      {"affine", AnalyticMap::affine(Complex(0.5, 0.25), Complex(-1.0, 0.5)), 0.95},
      {"moebius", AnalyticMap::moebius(Complex(0.8, 0.1), Complex(-0.4, 0.2)), 0.9},
      {"exp", AnalyticMap::exp_map(), 0.95},
      {"sqrt1p", AnalyticMap::sqrt1p(AnalyticMap::scale(z, Complex(0.9))), 0.9},
      {"power", AnalyticMap::power(AnalyticMap::scale(AnalyticMap::moebius(1.0, -1.0), Complex(0.6)), 0.5), 0.9},
      {"sigmoid", AnalyticMap::sigmoid(), 0.95},
      {"sine1p", AnalyticMap::sine1p(), 0.95},
      {"crescent", AnalyticMap::crescent(AnalyticMap::scale(z, Complex(0.9))), 0.9},
      {"polynomial", AnalyticMap::polynomial({Complex(1.0), Complex(0.5, 1.0), Complex(-0.25), Complex(0.0, 0.125)}), 0.95},
      {"sum", AnalyticMap::sum(AnalyticMap::exp_map(), AnalyticMap::polynomial({1.0, 2.0, 1.0})), 0.95},
      {"product", AnalyticMap::product(AnalyticMap::sine1p(), AnalyticMap::affine(1.0, 0.5)), 0.95},
      {"quotient", AnalyticMap::quotient(AnalyticMap::polynomial({1.0, 1.0}), AnalyticMap::affine(1.0, Complex(0.5, 0.25))), 0.9},
      {"scale", AnalyticMap::scale(AnalyticMap::exp_map(), Complex(0.5, 0.5)), 0.95},
  };

  SplitMix64 rng(subordkit::kDefaultSeed);
  for (const Case& test_case : cases) {
    CAPTURE(test_case.name);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Complex at = rng.in_disk(test_case.radius - 1e-4);
      worst = std::max(worst, subordkit::fd_residual(test_case.map, at, 1e-5));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("scale obeys the chain rule exactly") {
  SplitMix64 rng(7);
  const AnalyticMap f = AnalyticMap::exp_map();
  for (int i = 0; i < 100; ++i) {
    const Complex c = rng.in_disk(1.0);
    const Complex z = rng.in_disk(0.999);
    const AnalyticMap scaled = AnalyticMap::scale(f, c);
    const Jet outer = scaled.eval(z);
    const Jet inner = f.eval(c * z);
    CHECK(std::abs(outer.df - c * inner.df) <= 1e-12 * std::abs(inner.df));
    CHECK(std::abs(outer.d2f - c * c * inner.d2f) <=
          1e-12 * std::abs(inner.d2f));
  }
}

TEST_CASE("boundary samples preserve polyline order and skip corners") {
  const std::vector<Complex> square =
      subordkit::boundary_samples(AnalyticMap::identity(), 4);
  REQUIRE(square.size() == 4);
  CHECK(std::abs(square[0] - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(square[1] - Complex(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(square[2] - Complex(-1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(square[3] - Complex(0.0, -1.0)) <= 1e-15);

  const std::vector<Complex> shifted =
      subordkit::boundary_samples(AnalyticMap::moebius(1.0, 0.0), 4);
  REQUIRE(shifted.size() == 4);
  CHECK(std::abs(shifted[0] - Complex(2.0, 0.0)) <= 1e-15);
  CHECK(std::abs(shifted[1] - Complex(1.0, 1.0)) <= 1e-15);
  CHECK(std::abs(shifted[2] - Complex(0.0, 0.0)) <= 1e-15);
  CHECK(std::abs(shifted[3] - Complex(1.0, -1.0)) <= 1e-15);

  // Half-plane target (1+z)/(1-z): the pole parameter zeta=1 is a declared
  // corner; the remaining samples sit on the imaginary axis.
  const std::vector<Complex> halfplane =
      subordkit::boundary_samples(AnalyticMap::moebius(1.0, -1.0), 4, {0.0});
  REQUIRE(halfplane.size() == 3);
  CHECK(std::abs(halfplane[0] - Complex(0.0, 1.0)) <= 1e-12);
  CHECK(std::abs(halfplane[1] - Complex(0.0, 0.0)) <= 1e-12);
  CHECK(std::abs(halfplane[2] - Complex(0.0, -1.0)) <= 1e-12);
  for (const Complex& w : halfplane) CHECK(std::abs(w.real()) <= 1e-12);

  CHECK(thrown_kind([] {
          subordkit::boundary_samples(AnalyticMap::identity(), 2);
        }) == ErrorKind::Config);
}

TEST_CASE("error taxonomy") {
  CHECK(thrown_kind([] { AnalyticMap::exp_map().eval(Complex(1.5, 0.0)); }) ==
        ErrorKind::OutsideDisk);
  CHECK(thrown_kind([] { AnalyticMap::sqrt1p().eval(Complex(-1.0, 0.0)); }) ==
        ErrorKind::BranchCut);
  CHECK(thrown_kind([] { AnalyticMap::moebius(1.0, -1.0).eval(Complex(1.0, 0.0)); }) ==
        ErrorKind::Pole);
  CHECK(thrown_kind([] {
          AnalyticMap::quotient(AnalyticMap::constant(1.0),
                                AnalyticMap::affine(-0.5, 1.0))
              .eval(Complex(0.5, 0.0));
        }) == ErrorKind::Pole);
  CHECK(thrown_kind([] {
          AnalyticMap::scale(AnalyticMap::identity(), Complex(1.5, 0.0));
        }) == ErrorKind::DomainParam);
  CHECK(thrown_kind([] {
          AnalyticMap::power(AnalyticMap::affine(-2.0, 1.0), 0.5).eval(Complex(0.0));
        }) == ErrorKind::BranchCut);

  // The value-only path extends continuously through branch points.
  CHECK(std::abs(AnalyticMap::sqrt1p().value(Complex(-1.0, 0.0))) == 0.0);
  CHECK(std::abs(AnalyticMap::power(AnalyticMap::identity(), 0.5).value(Complex(0.0))) == 0.0);
}

TEST_CASE("structural zero detection") {
  CHECK(AnalyticMap::constant(0.0).is_zero());
  CHECK(AnalyticMap::polynomial({0.0, 0.0, 0.0}).is_zero());
  CHECK(AnalyticMap::product(AnalyticMap::exp_map(), AnalyticMap::constant(0.0)).is_zero());
  CHECK(AnalyticMap::scale(AnalyticMap::constant(0.0), Complex(0.5)).is_zero());
  CHECK_FALSE(AnalyticMap::identity().is_zero());
  CHECK_FALSE(AnalyticMap::exp_map().is_zero());
  CHECK_FALSE(AnalyticMap::polynomial({0.0, 1.0}).is_zero());
}

TEST_CASE("json round trip") {
  const AnalyticMap expr = AnalyticMap::quotient(
      AnalyticMap::sum(AnalyticMap::exp_map(AnalyticMap::scale(
                           AnalyticMap::identity(), Complex(0.5, 0.25))),
                       AnalyticMap::polynomial({1.0, Complex(0.0, 2.0)})),
      AnalyticMap::moebius(Complex(0.5), Complex(-0.25)));
  const nlohmann::json serialized = expr.to_json();
  const AnalyticMap parsed = AnalyticMap::from_json(serialized);
  CHECK(parsed.to_json() == serialized);

  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Complex z = rng.in_disk(0.9);
    CHECK(std::abs(parsed.value(z) - expr.value(z)) == 0.0);
  }

  CHECK(thrown_kind([] {
          AnalyticMap::from_json(nlohmann::json{{"op", "no-such-op"}});
        }) == ErrorKind::Config);
}

}  // TEST_SUITE
