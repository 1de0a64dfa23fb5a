#pragma once

#include <cstdint>
#include <vector>

#include "fctl/syntax.hpp"

namespace fctl {

// Deterministic generator of closed well-typed programs. Terms are built
// goal-directed over a small universe of types, verified with the real
// typechecker, and retried with a new stream on the rare rejection, so
// (seed, index) always names the same program.
struct GenConfig {
  Mode mode = kAbortiveCbv;
  std::uint64_t seed = 42;
  int max_term_depth = 8;
  double control_prob = 0.3;
};

TermPtr generate_program(const GenConfig& cfg, std::size_t index);

// The goal types the generator draws from.
std::vector<TypePtr> type_universe(Mode mode);

// Minimal closed inhabitant of a universe type (identity forms), or null
// when the type has none. Used for depth cutoffs and by the shrinker.
TermPtr canonical_inhabitant(Mode mode, const TypePtr& goal);

// Splittable deterministic stream, kept independent of library RNG details
// so corpora are reproducible across platforms.
struct Rng {
  std::uint64_t state;
  std::uint64_t next();
  double unit();                  // [0, 1)
  std::size_t below(std::size_t n);
  bool chance(double p);
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index,
                       std::uint64_t attempt);

}  // namespace fctl
