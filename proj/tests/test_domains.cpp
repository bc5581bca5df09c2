#include "subordkit/domains.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "subordkit/errors.hpp"
#include "subordkit/rng.hpp"

using subordkit::AnalyticMap;
using subordkit::Complex;
using subordkit::Containment;
using subordkit::ErrorKind;
using subordkit::EvalError;
using subordkit::SplitMix64;
using subordkit::TargetDomain;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorKind thrown_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("expected an EvalError");
  return ErrorKind::Runtime;
}

std::vector<TargetDomain> bounded_catalog() {
  std::vector<TargetDomain> out;
  out.push_back(TargetDomain::janowski(0.5, -0.5));
  out.push_back(TargetDomain::exp_dom());
  out.push_back(TargetDomain::sqrt_dom());
  out.push_back(TargetDomain::sigmoid_dom());
  out.push_back(TargetDomain::crescent_dom());
  out.push_back(TargetDomain::sine_dom());
  out.push_back(TargetDomain::cardioid_dom());
  return out;
}

std::vector<TargetDomain> full_catalog() {
  std::vector<TargetDomain> out = bounded_catalog();
  out.push_back(TargetDomain::halfplane(0.0));
  out.push_back(TargetDomain::halfplane(0.25));
  out.push_back(TargetDomain::janowski(1.0, -1.0));
  out.push_back(TargetDomain::power_dom(0.5));
  out.push_back(TargetDomain::power_dom(1.0));
  return out;
}

bool near_corner_angle(const TargetDomain& dom, double theta, double tol) {
  for (double c : dom.corner_params()) {
    double d = std::fmod(std::abs(theta - c), 2.0 * kPi);
    if (d > kPi) d = 2.0 * kPi - d;
    if (d < tol) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("domains") {

TEST_CASE("membership examples from the catalog contract") {
  CHECK(TargetDomain::halfplane(0.0).contains(Complex(1.0)) ==
        Containment::Inside);
  CHECK(TargetDomain::sqrt_dom().contains(Complex(1.0)) ==
        Containment::Inside);
  CHECK(TargetDomain::sigmoid_dom().contains(Complex(1.5)) ==
        Containment::Outside);
}

TEST_CASE("re extremes match closed forms") {
  const double e = std::exp(1.0);
  const TargetDomain sig = TargetDomain::sigmoid_dom();
  CHECK(sig.re_sup() == doctest::Approx(2.0 * e / (1.0 + e)).epsilon(1e-15));
  CHECK(sig.re_inf() == doctest::Approx(2.0 / (1.0 + e)).epsilon(1e-15));

  const TargetDomain sq = TargetDomain::sqrt_dom();
  CHECK(sq.re_sup() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sq.re_inf() == 0.0);

  const TargetDomain ex = TargetDomain::exp_dom();
  CHECK(ex.re_sup() == doctest::Approx(e).epsilon(1e-15));
  CHECK(ex.re_inf() == doctest::Approx(1.0 / e).epsilon(1e-15));

  const TargetDomain jan = TargetDomain::janowski(0.5, -0.5);
  CHECK(jan.re_inf() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(jan.re_sup() == doctest::Approx(3.0).epsilon(1e-15));

  const TargetDomain cres = TargetDomain::crescent_dom();
  CHECK(cres.re_inf() == 0.0);
  CHECK(cres.re_sup() == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));

  const TargetDomain card = TargetDomain::cardioid_dom();
  CHECK(card.re_inf() == 0.0);
  CHECK(card.re_sup() == 3.0);

  CHECK(TargetDomain::halfplane(0.25).re_inf() == 0.25);
  CHECK(TargetDomain::halfplane(0.25).re_sup() == kInf);
  CHECK(TargetDomain::power_dom(0.5).re_inf() == 0.0);
  CHECK(TargetDomain::power_dom(0.5).re_sup() == kInf);
  CHECK(TargetDomain::janowski(1.0, -1.0).re_inf() == 0.0);
}

TEST_CASE("re extremes agree with a corner-inclusive boundary scan") {
  for (const TargetDomain& dom : full_catalog()) {
    CAPTURE(dom.name());
    const std::size_t n = 100000;
    std::vector<double> thetas;
    thetas.reserve(n + dom.corner_params().size());
    for (std::size_t k = 0; k < n; ++k)
      thetas.push_back(2.0 * kPi * static_cast<double>(k) /
                       static_cast<double>(n));
    for (double c : dom.corner_params()) thetas.push_back(c);

    double lo = kInf;
    double hi = -kInf;
    for (double theta : thetas) {
      try {
        const Complex w = dom.map().value(std::polar(1.0, theta));
        lo = std::min(lo, w.real());
        hi = std::max(hi, w.real());
      } catch (const EvalError&) {
        // Pole angles (half-plane style maps) have no boundary value.
      }
    }
    CHECK(lo == doctest::Approx(dom.re_inf()).epsilon(1e-8).scale(1.0));
    if (std::isfinite(dom.re_sup()))
      CHECK(hi == doctest::Approx(dom.re_sup()).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("h(0) is 1 for every catalog entry") {
  for (const TargetDomain& dom : full_catalog()) {
    CAPTURE(dom.name());
    CHECK(std::abs(dom.h0() - Complex(1.0)) <= 1e-15);
  }
}

TEST_CASE("interior grid maps strictly inside") {
  for (const TargetDomain& dom : full_catalog()) {
    CAPTURE(dom.name());
    for (double r : {0.25, 0.5, 0.75, 0.9, 0.99}) {
      for (std::size_t k = 0; k < 256; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / 256.0;
        const Complex w = dom.map().value(std::polar(r, theta));
        REQUIRE(dom.contains(w) == Containment::Inside);
      }
    }
  }
}

TEST_CASE("boundary images get boundary verdicts at non-corner angles") {
  for (const TargetDomain& dom : full_catalog()) {
    CAPTURE(dom.name());
    for (std::size_t k = 0; k < 64; ++k) {
      const double theta = 2.0 * kPi * (static_cast<double>(k) + 0.5) / 64.0;
      if (near_corner_angle(dom, theta, 1e-6)) continue;
      const Complex w = dom.map().value(std::polar(1.0, theta));
      CAPTURE(theta);
      REQUIRE(dom.contains(w) == Containment::Boundary);
    }
  }
}

TEST_CASE("pointwise membership verdicts") {
  const TargetDomain hp = TargetDomain::halfplane(0.0);
  CHECK(hp.contains(Complex(0.0, 5.0)) == Containment::Boundary);
  CHECK(hp.contains(Complex(-0.1)) == Containment::Outside);
  CHECK(hp.contains(Complex(1e-3, -40.0)) == Containment::Inside);

  const TargetDomain jan = TargetDomain::janowski(0.5, -0.5);
  CHECK(jan.contains(Complex(3.0)) == Containment::Boundary);
  CHECK(jan.contains(Complex(3.1)) == Containment::Outside);
  CHECK(jan.contains(Complex(1.0 / 3.0)) == Containment::Boundary);
  CHECK(jan.contains(Complex(1.0)) == Containment::Inside);

  const TargetDomain sq = TargetDomain::sqrt_dom();
  CHECK(sq.contains(Complex(0.0)) == Containment::Boundary);  // corner
  CHECK(sq.contains(Complex(-0.5)) == Containment::Outside);
  CHECK(sq.contains(Complex(0.0, 0.5)) == Containment::Outside);
  CHECK(sq.contains(Complex(std::sqrt(2.0))) == Containment::Boundary);
  CHECK(sq.contains(Complex(1.5)) == Containment::Outside);

  const TargetDomain sig = TargetDomain::sigmoid_dom();
  const double e = std::exp(1.0);
  CHECK(sig.contains(Complex(1.0)) == Containment::Inside);
  CHECK(sig.contains(Complex(2.0 * e / (1.0 + e))) == Containment::Boundary);
  CHECK(sig.contains(Complex(0.0)) == Containment::Outside);
  CHECK(sig.contains(Complex(2.0)) == Containment::Outside);

  const TargetDomain ex = TargetDomain::exp_dom();
  CHECK(ex.contains(Complex(1.0)) == Containment::Inside);
  CHECK(ex.contains(Complex(std::exp(1.0))) == Containment::Boundary);
  CHECK(ex.contains(Complex(0.0)) == Containment::Outside);
  CHECK(ex.contains(Complex(-1.0)) == Containment::Outside);

  const TargetDomain cres = TargetDomain::crescent_dom();
  CHECK(cres.contains(Complex(1.0)) == Containment::Inside);
  CHECK(cres.contains(Complex(1.0 + std::sqrt(2.0))) == Containment::Boundary);
  CHECK(cres.contains(Complex(0.0, 1.0)) == Containment::Boundary);  // corner
  CHECK(cres.contains(Complex(-1.0)) == Containment::Outside);
  CHECK(cres.contains(Complex(0.0, 3.0)) == Containment::Outside);

  const TargetDomain sine = TargetDomain::sine_dom();
  CHECK(sine.contains(Complex(1.0)) == Containment::Inside);
  CHECK(sine.contains(Complex(1.0 + std::sin(1.0))) == Containment::Boundary);
  CHECK(sine.contains(Complex(sine.re_sup())) ==
        Containment::Outside);  // the real axis exits the image at 1 + sin 1

  const TargetDomain card = TargetDomain::cardioid_dom();
  CHECK(card.contains(Complex(1.0)) == Containment::Inside);
  CHECK(card.contains(Complex(3.0)) == Containment::Boundary);
  CHECK(card.contains(Complex(1.0 / 3.0)) == Containment::Boundary);  // cusp
  CHECK(card.contains(Complex(0.0)) == Containment::Outside);
  CHECK(card.contains(Complex(3.2)) == Containment::Outside);

  const TargetDomain pw = TargetDomain::power_dom(0.5);
  CHECK(pw.contains(Complex(1.0)) == Containment::Inside);
  CHECK(pw.contains(Complex(0.0, 1.0)) == Containment::Outside);
  CHECK(pw.contains(std::polar(2.0, kPi / 4.0)) == Containment::Boundary);
  CHECK(pw.contains(Complex(0.0)) == Containment::Boundary);  // apex
  CHECK(pw.contains(Complex(-3.0)) == Containment::Outside);
}

TEST_CASE("polyline cache is sorted, corner-refined, and consistent") {
  for (const TargetDomain& dom : bounded_catalog()) {
    CAPTURE(dom.name());
    const auto& cache = dom.boundary_cache();
    REQUIRE(cache.size() >= 4000);
    for (std::size_t i = 1; i < cache.size(); ++i)
      REQUIRE(cache[i - 1].theta < cache[i].theta);
    for (std::size_t i = 0; i < cache.size(); i += 97) {
      const Complex direct = dom.map().value(std::polar(1.0, cache[i].theta));
      REQUIRE(std::abs(direct - cache[i].value) == 0.0);
    }

    // Every sharp interior turn must sit against a near-exhausted angular
    // gap next to a declared corner; smooth stretches stay below 5 degrees.
    const std::size_t m = cache.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Complex v1 = cache[i].value - cache[(i + m - 1) % m].value;
      const Complex v2 = cache[(i + 1) % m].value - cache[i].value;
      if (std::abs(v1) == 0.0 || std::abs(v2) == 0.0) continue;
      const double cross = v1.real() * v2.imag() - v1.imag() * v2.real();
      const double dot = v1.real() * v2.real() + v1.imag() * v2.imag();
      const double turn = std::abs(std::atan2(cross, dot));
      if (turn <= 5.0 * kPi / 180.0 + 1e-12) continue;
      const double prev_gap =
          cache[i].theta - cache[(i + m - 1) % m].theta +
          (i == 0 ? 2.0 * kPi : 0.0);
      const double next_gap = cache[(i + 1) % m].theta - cache[i].theta +
                              (i + 1 == m ? 2.0 * kPi : 0.0);
      CAPTURE(cache[i].theta);
      REQUIRE((std::min(prev_gap, next_gap) <= 1e-6 ||
               near_corner_angle(dom, cache[i].theta, 2e-3)));
    }
  }
}

TEST_CASE("predicate and polyline verdicts agree away from the boundary") {
  SplitMix64 rng(subordkit::kDefaultSeed);
  for (const TargetDomain& dom : bounded_catalog()) {
    CAPTURE(dom.name());
    REQUIRE(dom.contains_polyline(dom.h0()) == Containment::Inside);
    const auto& cache = dom.boundary_cache();
    const double re_lo = dom.re_inf() - 0.5;
    const double re_hi = dom.re_sup() + 0.5;
    std::size_t checked = 0;
    for (std::size_t trial = 0; trial < 2000; ++trial) {
      const Complex w(rng.uniform(re_lo, re_hi), rng.uniform(-2.5, 2.5));
      const Containment pred = dom.contains(w);
      const Containment poly = dom.contains_polyline(w);
      if (pred == Containment::Boundary || poly == Containment::Boundary)
        continue;
      double dist = kInf;
      for (std::size_t i = 0; i < cache.size(); i += 7)
        dist = std::min(dist, std::abs(w - cache[i].value));
      if (dist < 1e-3) continue;  // inside the polyline discretization band
      CAPTURE(w.real());
      CAPTURE(w.imag());
      REQUIRE(pred == poly);
      ++checked;
    }
    REQUIRE(checked > 1000);
  }
}

TEST_CASE("supporting half-planes contain the whole boundary") {
  std::vector<TargetDomain> convex;
  convex.push_back(TargetDomain::halfplane(0.0));
  convex.push_back(TargetDomain::janowski(0.5, -0.5));
  convex.push_back(TargetDomain::janowski(1.0, -1.0));
  convex.push_back(TargetDomain::exp_dom());
  convex.push_back(TargetDomain::sqrt_dom());
  convex.push_back(TargetDomain::sigmoid_dom());
  convex.push_back(TargetDomain::power_dom(0.5));

  for (const TargetDomain& dom : convex) {
    CAPTURE(dom.name());
    REQUIRE(dom.convex());
    for (std::size_t k = 0; k < 64; ++k) {
      const double probe = 2.0 * kPi * (static_cast<double>(k) + 0.5) / 64.0;
      if (near_corner_angle(dom, probe, 1e-6)) continue;
      const auto [s, n] = dom.support_halfplane(probe);
      REQUIRE(std::abs(std::abs(n) - 1.0) <= 1e-12);
      for (std::size_t j = 0; j < 256; ++j) {
        const double phi = 2.0 * kPi * (static_cast<double>(j) + 0.25) / 256.0;
        if (near_corner_angle(dom, phi, 1e-6)) continue;
        Complex w;
        try {
          w = dom.map().value(std::polar(1.0, phi));
        } catch (const EvalError&) {
          continue;
        }
        const double margin = (std::conj(n) * (w - s)).real();
        CAPTURE(probe);
        CAPTURE(phi);
        REQUIRE(margin >= -1e-9 * (1.0 + std::abs(w)));
      }
    }
  }
}

TEST_CASE("support normals at landmark angles") {
  const auto [s_hp, n_hp] = TargetDomain::halfplane(0.0).support_halfplane(kPi);
  CHECK(std::abs(s_hp) <= 1e-15);
  CHECK(std::abs(n_hp - Complex(1.0)) <= 1e-12);

  const auto [s_exp, n_exp] = TargetDomain::exp_dom().support_halfplane(0.0);
  CHECK(std::abs(s_exp - Complex(std::exp(1.0))) <= 1e-15);
  CHECK(std::abs(n_exp - Complex(-1.0)) <= 1e-12);

  const double e = std::exp(1.0);
  const auto [s_sig, n_sig] =
      TargetDomain::sigmoid_dom().support_halfplane(0.0);
  CHECK(std::abs(s_sig - Complex(2.0 * e / (1.0 + e))) <= 1e-12);
  CHECK(std::abs(n_sig - Complex(-1.0)) <= 1e-12);
}

TEST_CASE("janowski(1, -1) degenerates to halfplane(0)") {
  const TargetDomain jan = TargetDomain::janowski(1.0, -1.0);
  const TargetDomain hp = TargetDomain::halfplane(0.0);
  CHECK(jan.re_inf() == hp.re_inf());
  CHECK_FALSE(jan.bounded());
  SplitMix64 rng(subordkit::substream_seed(subordkit::kDefaultSeed, 7));
  for (int trial = 0; trial < 200; ++trial) {
    const Complex w(rng.uniform(-1.0, 2.0), rng.uniform(-3.0, 3.0));
    REQUIRE(jan.contains(w) == hp.contains(w));
  }
  const auto [s1, n1] = jan.support_halfplane(kPi);
  const auto [s2, n2] = hp.support_halfplane(kPi);
  CHECK(std::abs(s1 - s2) <= 1e-12);
  CHECK(std::abs(n1 - n2) <= 1e-12);
}

TEST_CASE("map_with_inner composes the catalog map") {
  SplitMix64 rng(subordkit::substream_seed(subordkit::kDefaultSeed, 11));
  const AnalyticMap half = AnalyticMap::scale(AnalyticMap::identity(), 0.5);
  for (const TargetDomain& dom : full_catalog()) {
    CAPTURE(dom.name());
    const AnalyticMap direct = dom.map_with_inner(AnalyticMap::identity());
    const AnalyticMap shrunk = dom.map_with_inner(half);
    for (int trial = 0; trial < 100; ++trial) {
      const Complex z = rng.in_disk(0.9);
      const Complex expect = dom.map().value(z);
      REQUIRE(std::abs(direct.value(z) - expect) <=
              1e-12 * (1.0 + std::abs(expect)));
      const Complex expect_half = dom.map().value(0.5 * z);
      REQUIRE(std::abs(shrunk.value(z) - expect_half) <=
              1e-12 * (1.0 + std::abs(expect_half)));
    }
  }
}

TEST_CASE("factory dispatch by name") {
  CHECK(TargetDomain::make("halfplane", {0.25}).re_inf() == 0.25);
  CHECK(TargetDomain::make("janowski", {0.5, -0.5}).bounded());
  CHECK(TargetDomain::make("exp").name() == "exp");
  CHECK(TargetDomain::make("sqrt").name() == "sqrt");
  CHECK(TargetDomain::make("sigmoid").name() == "sigmoid");
  CHECK(TargetDomain::make("crescent").name() == "crescent");
  CHECK(TargetDomain::make("sine").name() == "sine");
  CHECK(TargetDomain::make("cardioid-poly").name() == "cardioid-poly");
  CHECK(TargetDomain::make("cardioid").name() == "cardioid-poly");
  CHECK(TargetDomain::make("power", {0.5}).name() == "power");

  CHECK(thrown_kind([] { TargetDomain::make("lemniscate"); }) ==
        ErrorKind::Config);
  CHECK(thrown_kind([] { TargetDomain::make("halfplane"); }) ==
        ErrorKind::Config);
  CHECK(thrown_kind([] { TargetDomain::make("sqrt", {1.0}); }) ==
        ErrorKind::Config);
}

TEST_CASE("parameter validation") {
  CHECK(thrown_kind([] { TargetDomain::halfplane(-0.1); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { TargetDomain::halfplane(1.0); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { TargetDomain::janowski(0.5, 0.5); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { TargetDomain::janowski(1.2, 0.0); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { TargetDomain::janowski(0.5, -1.5); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { TargetDomain::power_dom(0.0); }) ==
        ErrorKind::DomainParam);
  CHECK(thrown_kind([] { TargetDomain::power_dom(1.5); }) ==
        ErrorKind::DomainParam);
}

TEST_CASE("structural misuse raises typed errors") {
  CHECK(thrown_kind([] {
          TargetDomain::crescent_dom().support_halfplane(0.3);
        }) == ErrorKind::DomainParam);
  CHECK(thrown_kind([] {
          TargetDomain::sqrt_dom().support_halfplane(kPi);
        }) == ErrorKind::DomainParam);
  CHECK(thrown_kind([] {
          TargetDomain::halfplane(0.0).contains_polyline(Complex(1.0));
        }) == ErrorKind::Runtime);
}

}  // TEST_SUITE
