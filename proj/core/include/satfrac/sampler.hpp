#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/intmat.hpp"

namespace satfrac {

// Margin-preserving Markov moves: kernel vectors of a margin matrix with
// all entries in {-1,0,1}, so adding or subtracting one keeps a 0/1 table
// inside its fiber of fixed margins whenever the result is again 0/1.
struct MoveSet {
  std::string source_digest;  // digest of the margin matrix
  int K = 0;                  // table length
  std::vector<std::vector<int>> moves;
};

// Indicator matrix of all (factor, level) pairs: one row per pair (factor
// major, level minor), one column per design point.  M * table lists every
// one-way margin of the table.
IntMatrix margin_matrix(const FactorialDesign& design);

// Circuits of `m` restricted to entries in {-1,0,1}.  For 0/1 tables these
// moves connect every set of tables sharing the same margins M * table.
MoveSet universal_moves(const IntMatrix& m, const CircuitOptions& opts = {});

// Same restriction applied to an externally supplied circuit set (e.g. a
// cache hit); `circuits` must have been computed from `m`.
MoveSet universal_moves(const IntMatrix& m, const CircuitBasis& circuits);

// Deterministic pseudorandom stream.  Draws use rejection sampling on top
// of mt19937_64, so a given seed produces the same sequence on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Uniform bit.
  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

struct ChainConfig {
  std::uint64_t seed = 0;
  std::int64_t samples = 1;        // accepted fractions to emit
  std::int64_t burn_in = 1000;     // steps discarded before the first candidate
  std::int64_t thin = 10;          // chain steps between candidates
  bool require_saturated = true;   // drop candidates failing the circuit criterion
  std::int64_t max_steps = 0;      // guard on total steps (0 = unlimited)
};

struct ChainStats {
  std::int64_t steps = 0;                   // proposals made
  std::int64_t moved = 0;                   // proposals that changed the state
  std::int64_t candidates = 0;              // post-burn-in states examined
  std::int64_t emitted = 0;                 // fractions handed to the sink
  std::int64_t rejected_non_saturated = 0;  // candidates dropped by the criterion
};

// One chain proposal: pick a move and a sign uniformly; apply when the
// result stays 0/1, otherwise leave the table unchanged.  Margins are
// invariant either way.  Returns whether the table changed.
bool step(std::vector<int>& table, const MoveSet& moves, Rng& rng);

// Hook signature reserved for a Metropolis-Hastings generalization: the
// probability of accepting `proposed` from `current`.  The implemented walk
// targets the uniform distribution, i.e. the constant 1; nothing consumes
// this hook yet.
using AcceptanceRatio =
    std::function<double(const std::vector<int>& current, const std::vector<int>& proposed)>;

// Runs the margin-preserving walk from `start`, handing every accepted
// fraction to `sink`, until cfg.samples have been emitted.  Candidates that
// fail the circuit criterion are discarded without consuming the budget.
// Throws LimitError when cfg.max_steps is hit first.
ChainStats sample_saturated(const Fraction& start, const CircuitBasis& basis,
                            const MoveSet& moves, const ChainConfig& cfg,
                            const std::function<void(const Fraction&)>& sink);

struct RejectionStats {
  std::int64_t draws = 0;
  std::int64_t accepted = 0;
};

// Draws uniform rank-size point subsets of the design behind `a` and keeps
// those passing the circuit criterion until n are accepted.  Throws
// LimitError when max_draws (0 = unlimited) is exhausted first.
RejectionStats random_psubset_sample(const FactorialDesign& design, const CircuitBasis& basis,
                                     std::int64_t n, Rng& rng,
                                     const std::function<void(const Fraction&)>& sink,
                                     std::int64_t max_draws = 0);

}  // namespace satfrac
