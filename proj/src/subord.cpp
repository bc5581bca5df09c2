#include "subordkit/subord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

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

enum class PremiseStatus { Holds, Fails, NonRemovable };

/// Strict containment of the operator image H_t(p) on the whole grid,
/// scanned from the largest radius down (violations cluster near the rim,
/// so this order exits earliest). The regular-path formula is inlined; the
/// full limit machinery only runs on near-singular denominators.
PremiseStatus operator_image_inside(const ThetaPhiPair& pair, double t,
                                    const TargetDomain& dom,
                                    const AnalyticMap& p,
                                    const DiskGrid& grid) {
  const AnalyticMap& theta = pair.theta();
  const AnalyticMap& phi = pair.phi();
  for (std::size_t ri = grid.radii.size(); ri-- > 0;) {
    const double r = grid.radii[ri];
    for (std::size_t k = 0; k < grid.angular_count; ++k) {
      const Complex z =
          std::polar(r, kTwoPi * static_cast<double>(k) /
                            static_cast<double>(grid.angular_count));
      const Jet jet = p.eval(z);
      const Complex tv = theta.value(z);
      const Complex pv = phi.value(z);
      const Complex p0 = jet.f;
      const Complex p1 = tv * jet.f + pv * z * jet.df;
      const Complex den = t * p0 + (1.0 - t) * p1;
      Complex h;
      if (std::abs(den) >= 1e-10 * (std::abs(p0) + std::abs(p1)) &&
          !(den.real() == 0.0 && den.imag() == 0.0)) {
        h = p0 * p1 / den;
      } else {
        try {
          h = h_operator(pair, p, t, z).value;
        } catch (const EvalError& e) {
          if (e.kind() == ErrorKind::NonRemovable)
            return PremiseStatus::NonRemovable;
          throw;
        }
      }
      if (dom.contains(h) != Containment::Inside) return PremiseStatus::Fails;
    }
  }
  return PremiseStatus::Holds;
}

/// Degree-3 zero-fixing polynomial with boundary sup normalized to about 1
/// (measured on a 1024-point rim grid), scaled by c in [0.1, 0.95].
AnalyticMap sample_inner(SplitMix64& rng) {
  while (true) {
    const Complex b1 = rng.in_disk(1.0);
    const Complex b2 = rng.in_disk(1.0);
    const Complex b3 = rng.in_disk(1.0);
    double sup = 0.0;
    for (std::size_t k = 0; k < 1024; ++k) {
      const Complex z = std::polar(1.0, kTwoPi * static_cast<double>(k) / 1024.0);
      sup = std::max(sup, std::abs(z * (b1 + z * (b2 + z * b3))));
    }
    if (sup < 1e-6) continue;  // everything cancelled; redraw
    const Complex c = Complex(rng.uniform(0.1, 0.95)) / sup;
    return AnalyticMap::polynomial({Complex(0.0), c * b1, c * b2, c * b3});
  }
}

}  // namespace

SubordinationVerdict is_subordinate(const AnalyticMap& p,
                                    const TargetDomain& dom,
                                    const DiskGrid& grid) {
  validate_grid(grid);
  SubordinationVerdict verdict;
  verdict.initial_match = std::abs(p.value(Complex(0.0)) - dom.h0()) <= 1e-9;
  if (!verdict.initial_match) return verdict;
  for (double r : grid.radii) {
    for (std::size_t k = 0; k < grid.angular_count; ++k) {
      const Complex z =
          std::polar(r, kTwoPi * static_cast<double>(k) /
                            static_cast<double>(grid.angular_count));
      const Complex w = p.value(z);
      if (dom.contains(w) == Containment::Outside) {
        verdict.witness = OutsideWitness{r, k, w};
        return verdict;
      }
    }
  }
  verdict.subordinate = true;
  return verdict;
}

double hypo_check(const ThetaPhiPair& pair, const TargetDomain& dom,
                  const DiskGrid& zgrid, std::size_t boundary_count) {
  validate_grid(zgrid);
  if (boundary_count < 4)
    throw EvalError(ErrorKind::Config, "need at least 4 boundary angles");

  // Boundary factor q(zeta) = h(zeta) / (zeta h'(zeta)) at non-corner angles.
  std::vector<Complex> q;
  q.reserve(boundary_count);
  for (std::size_t j = 0; j < boundary_count; ++j) {
    const double theta = kTwoPi * (static_cast<double>(j) + 0.5) /
                         static_cast<double>(boundary_count);
    bool corner = false;
    for (double c : dom.corner_params()) {
      double d = std::fmod(std::abs(theta - c), kTwoPi);
      if (d > std::numbers::pi) d = kTwoPi - d;
      if (d < 1e-9) corner = true;
    }
    if (corner) continue;
    const Complex zeta = std::polar(1.0, theta);
    const Jet jet = dom.map().eval(zeta);
    const Complex v = zeta * jet.df;
    if (std::abs(v) < 1e-12)
      throw EvalError(ErrorKind::Runtime,
                      "h' vanishes at a non-corner boundary angle " +
                          std::to_string(theta));
    q.push_back(jet.f / v);
  }

  double min_margin = std::numeric_limits<double>::infinity();
  for (double r : zgrid.radii) {
    for (std::size_t k = 0; k < zgrid.angular_count; ++k) {
      const Complex z =
          std::polar(r, kTwoPi * static_cast<double>(k) /
                            static_cast<double>(zgrid.angular_count));
      const double re_phi = pair.phi().value(z).real();
      const Complex b = pair.theta().value(z) - Complex(1.0);
      for (const Complex& qj : q) {
        const double margin =
            re_phi + qj.real() * b.real() - qj.imag() * b.imag();
        min_margin = std::min(min_margin, margin);
      }
    }
  }
  return min_margin;
}

FalsifyResult falsify_lemma(const ThetaPhiPair& pair, double t,
                            const TargetDomain& dom, std::size_t budget,
                            std::uint64_t seed, const DiskGrid& grid) {
  validate_grid(grid);
  if (!(t >= 0.0 && t <= 1.0))
    throw EvalError(ErrorKind::DomainParam, "weight t must lie in [0, 1]");
  if (budget == 0)
    throw EvalError(ErrorKind::Config, "budget must be positive");

  SplitMix64 rng(seed);
  FalsifyResult result;
  const std::size_t attempt_cap = 1000 * budget;
  const std::size_t exclusion_cap = std::max<std::size_t>(budget / 100, 1);

  while (result.premise_holding < budget) {
    if (result.attempts >= attempt_cap)
      throw EvalError(ErrorKind::Config,
                      "attempt cap exhausted before reaching the budget of "
                      "premise-holding samples");
    ++result.attempts;

    AnalyticMap p = AnalyticMap::identity();
    if (rng.uniform01() < 0.9) {
      // Exact composition h(omega(z)): subordinate by construction, probing
      // how often the operator image stays inside as well.
      p = dom.map_with_inner(sample_inner(rng));
    } else {
      // Boundary-hugging perturbation of the target map itself.
      const double s = rng.uniform(0.001, 0.05);
      const Complex eps =
          std::polar(rng.uniform(1e-4, 1e-2), rng.uniform(0.0, kTwoPi));
      p = AnalyticMap::sum(
          AnalyticMap::scale(dom.map(), Complex(1.0 - s)),
          AnalyticMap::polynomial({Complex(0.0), Complex(0.0), s * eps}));
    }

    const PremiseStatus status = operator_image_inside(pair, t, dom, p, grid);
    if (status == PremiseStatus::NonRemovable) {
      ++result.excluded;
      if (result.excluded > exclusion_cap)
        throw EvalError(ErrorKind::Config,
                        "non-removable operator singularities exceeded 1% of "
                        "the sample budget");
      continue;
    }
    if (status == PremiseStatus::Fails) continue;
    ++result.premise_holding;

    const SubordinationVerdict verdict = is_subordinate(p, dom, grid);
    if (!verdict.subordinate && verdict.witness.has_value())
      result.counterexamples.push_back({p.to_json(), *verdict.witness});
  }
  return result;
}

}  // namespace subordkit
