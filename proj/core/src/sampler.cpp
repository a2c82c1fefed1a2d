#include "satfrac/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "satfrac/errors.hpp"
#include "satfrac/saturation.hpp"

namespace satfrac {

IntMatrix margin_matrix(const FactorialDesign& design) {
  std::int64_t rows = 0;
  for (int s : design.levels()) rows += s;
  const std::int64_t cols = design.size();
  if (cols > 1'000'000) {
    throw LimitError("design too large to materialize a margin matrix");
  }
  IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  std::vector<int> offset(design.factor_count(), 0);
  for (int f = 1; f < design.factor_count(); ++f) {
    offset[f] = offset[f - 1] + design.levels()[f - 1];
  }
  for (std::int64_t idx = 0; idx < cols; ++idx) {
    const std::vector<int> tuple = design.point_tuple(idx);
    for (int f = 0; f < design.factor_count(); ++f) {
      m.at(offset[f] + tuple[f], static_cast<int>(idx)) = 1;
    }
  }
  return m;
}

namespace {

MoveSet moves_from_circuits(const CircuitBasis& basis) {
  MoveSet out;
  out.source_digest = basis.source_digest;
  out.K = basis.K;
  for (const KernelVector& c : basis.circuits) {
    if (c.max_abs() > 1) continue;
    out.moves.emplace_back(c.entries().begin(), c.entries().end());
  }
  return out;
}

}  // namespace

MoveSet universal_moves(const IntMatrix& m, const CircuitOptions& opts) {
  return moves_from_circuits(enumerate_circuits(m, opts));
}

MoveSet universal_moves(const IntMatrix& m, const CircuitBasis& circuits) {
  if (circuits.source_digest != matrix_digest(m)) {
    throw std::invalid_argument("circuit basis was not computed from this margin matrix");
  }
  return moves_from_circuits(circuits);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  // Reject draws below 2^64 mod n so every residue is equally likely.
  const std::uint64_t reject = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = gen_();
    if (x >= reject) return x % n;
  }
}

bool step(std::vector<int>& table, const MoveSet& moves, Rng& rng) {
  if (static_cast<int>(table.size()) != moves.K) {
    throw std::invalid_argument("table length does not match the move set");
  }
  if (moves.moves.empty()) return false;
  const std::vector<int>& m = moves.moves[rng.below(moves.moves.size())];
  const int sign = rng.coin() ? 1 : -1;
  for (int i = 0; i < moves.K; ++i) {
    const int v = table[i] + sign * m[i];
    if (v != 0 && v != 1) return false;
  }
  for (int i = 0; i < moves.K; ++i) table[i] += sign * m[i];
  return true;
}

ChainStats sample_saturated(const Fraction& start, const CircuitBasis& basis,
                            const MoveSet& moves, const ChainConfig& cfg,
                            const std::function<void(const Fraction&)>& sink) {
  const FactorialDesign& design = start.design();
  if (design.size() != moves.K) {
    throw std::invalid_argument("move set length does not match the design size");
  }
  if (design.size() != basis.K) {
    throw std::invalid_argument("circuit basis length does not match the design size");
  }
  if (start.size() != basis.rank) {
    throw std::invalid_argument("start fraction must have rank-many points");
  }
  if (cfg.thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (cfg.burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
  if (cfg.samples < 0) throw std::invalid_argument("samples must be >= 0");
  if (cfg.max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");

  Rng rng(cfg.seed);
  std::vector<int> table = fraction_to_table(start);
  const CircuitSupportIndex index(basis, start.size());
  ChainStats st;
  while (st.emitted < cfg.samples) {
    if (cfg.max_steps != 0 && st.steps >= cfg.max_steps) {
      throw LimitError("chain step guard exhausted before the requested sample count");
    }
    ++st.steps;
    if (step(table, moves, rng)) ++st.moved;
    if (st.steps <= cfg.burn_in) continue;
    if ((st.steps - cfg.burn_in) % cfg.thin != 0) continue;
    ++st.candidates;
    const Fraction f = table_to_fraction(design, table);
    if (cfg.require_saturated && !is_saturated_by_circuits(f, index).saturated) {
      ++st.rejected_non_saturated;
      continue;
    }
    sink(f);
    ++st.emitted;
  }
  return st;
}

RejectionStats random_psubset_sample(const FactorialDesign& design, const CircuitBasis& basis,
                                     std::int64_t n, Rng& rng,
                                     const std::function<void(const Fraction&)>& sink,
                                     std::int64_t max_draws) {
  if (design.size() != basis.K) {
    throw std::invalid_argument("circuit basis length does not match the design size");
  }
  if (n < 0) throw std::invalid_argument("sample count must be >= 0");
  const std::uint64_t K = static_cast<std::uint64_t>(design.size());
  const int p = basis.rank;
  const CircuitSupportIndex index(basis, p);
  std::vector<std::int64_t> pool(K);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::int64_t> pts(p);
  RejectionStats st;
  while (st.accepted < n) {
    if (max_draws != 0 && st.draws >= max_draws) {
      throw LimitError("draw guard exhausted before the requested sample count");
    }
    ++st.draws;
    // Partial Fisher-Yates: the first p slots become a uniform p-subset.
    for (int i = 0; i < p; ++i) {
      const std::uint64_t j = i + rng.below(K - i);
      std::swap(pool[i], pool[j]);
    }
    pts.assign(pool.begin(), pool.begin() + p);
    std::sort(pts.begin(), pts.end());
    if (index.first_contained(pts).has_value()) continue;
    ++st.accepted;
    sink(Fraction(design, pts));
  }
  return st;
}

}  // namespace satfrac
