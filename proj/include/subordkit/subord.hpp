#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "subordkit/domains.hpp"
#include "subordkit/fncat.hpp"
#include "subordkit/means.hpp"
#include "subordkit/rng.hpp"

namespace subordkit {

/// Sampling grid over the unit disk: concentric rings at the given radii
/// (strictly increasing, inside the open disk) with uniformly spaced angles.
struct DiskGrid {
  std::vector<double> radii{0.5, 0.9, 0.99, 0.999};
  std::size_t angular_count = 1024;
};

/// First grid point found outside the target: ring radius, angle index
/// (angle = 2*pi*k/angular_count), and the image value there.
struct OutsideWitness {
  double radius = 0.0;
  std::size_t angle_index = 0;
  Complex value{};
};

struct SubordinationVerdict {
  bool subordinate = false;
  /// |p(0) - h(0)| <= 1e-9; when false the ring scan is skipped entirely.
  bool initial_match = false;
  std::optional<OutsideWitness> witness;
};

/// Numerical subordination check p < h: initial-value agreement plus strict
/// containment of p on every grid ring, scanned from the smallest radius
/// upward. Boundary verdicts never count as violations; the witness is the
/// first strict outside point in scan order.
SubordinationVerdict is_subordinate(const AnalyticMap& p,
                                    const TargetDomain& dom,
                                    const DiskGrid& grid = {});

/// Admissibility margin of a coefficient pair against a convex target:
/// min over the z-grid and non-corner boundary angles of
///   Re[ phi(z) + (h(zeta) / (zeta h'(zeta))) (theta(z) - 1) ].
/// Throws EvalError(Runtime) if |h'| < 1e-12 at a sampled non-corner angle.
double hypo_check(const ThetaPhiPair& pair, const TargetDomain& dom,
                  const DiskGrid& zgrid = DiskGrid{{0.5, 0.9, 0.99, 0.999},
                                                   256},
                  std::size_t boundary_count = 1024);

/// One recorded lemma violation: the sampled candidate (serialized) plus the
/// conclusion-side witness.
struct Counterexample {
  nlohmann::json candidate;
  OutsideWitness witness;
};

struct FalsifyResult {
  std::size_t attempts = 0;
  /// Samples whose operator image stayed strictly inside the target on the
  /// whole grid; the search runs until `budget` of these are seen.
  std::size_t premise_holding = 0;
  /// Samples discarded because the operator hit a non-removable singularity.
  std::size_t excluded = 0;
  std::vector<Counterexample> counterexamples;
};

/// Randomized search for violations of the operator subordination principle:
/// draw candidates p with p(0) = h(0) (90% exact compositions h(omega), 10%
/// boundary-hugging perturbations), keep those whose operator image lies
/// strictly inside the target on the grid, and report every kept sample
/// whose own image escapes. Deterministic for a fixed seed. Throws
/// EvalError(Config) if non-removable exclusions exceed 1% of the budget or
/// the attempt cap (1000x budget) is exhausted first.
FalsifyResult falsify_lemma(const ThetaPhiPair& pair, double t,
                            const TargetDomain& dom, std::size_t budget,
                            std::uint64_t seed = kDefaultSeed,
                            const DiskGrid& grid = {});

}  // namespace subordkit
