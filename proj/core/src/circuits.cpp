#include "satfrac/circuits.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "internal/checked_int.hpp"
#include "internal/sweep.hpp"
#include "internal/vec_set.hpp"
#include "satfrac/errors.hpp"

namespace satfrac {

namespace {

using detail::C64;
using detail::Overflow64;
using detail::Scalar;
using detail::SubsetSweep;
using detail::VecSet;

void check_circuit_cap(std::size_t have, std::int64_t cap) {
  if (cap > 0 && static_cast<std::int64_t>(have) > cap) {
    throw LimitError("enumerate_circuits: circuit cap exceeded");
  }
}

// ---------------------------------------------------------------------------
// Primal sweep: every basis (independent column subset of size rank) paired
// with every other column yields the fundamental circuit of the pair; the
// hash set removes the many repetitions.  Preferred when rank is small.

template <typename T>
void primal_sweep_collect(const IntMatrix& a, int target, int offset, int stride,
                          std::int64_t max_circuits, VecSet& out) {
  SubsetSweep<T> sweep(a, target);
  const int K = a.cols();
  std::vector<T> z;
  std::vector<std::int64_t> raw(K, 0);
  std::vector<std::int32_t> key(K, 0);
  std::vector<int> positions;
  IntVector big(K, Int(0));

  detail::for_each_independent_subset(
      sweep, target,
      [&] {
        const std::vector<int>& basis = sweep.chosen_cols();
        const T dk = sweep.pivot(sweep.depth());
        for (int e = 0; e < K; ++e) {
          if (sweep.is_chosen(e)) continue;
          sweep.solve_scaled(e, z);

          if constexpr (std::is_same_v<T, C64>) {
            positions.clear();
            std::int64_t g = 0;
            for (int j = 0; j < target; ++j) {
              if (z[j].v == 0) continue;
              raw[basis[j]] = z[j].v;
              positions.push_back(basis[j]);
              g = std::gcd(g, z[j].v);
            }
            raw[e] = -dk.v;
            positions.push_back(e);
            g = std::gcd(g, dk.v);
            std::sort(positions.begin(), positions.end());
            const std::int64_t sign = raw[positions.front()] > 0 ? 1 : -1;
            for (int pos : positions) {
              const std::int64_t val = sign * (raw[pos] / g);
              if (val < INT32_MIN || val > INT32_MAX) throw Overflow64{};
              key[pos] = static_cast<std::int32_t>(val);
            }
            const bool fresh = out.insert(key.data());
            for (int pos : positions) {
              raw[pos] = 0;
              key[pos] = 0;
            }
            if (fresh) check_circuit_cap(out.size(), max_circuits);
          } else {
            std::fill(big.begin(), big.end(), Int(0));
            for (int j = 0; j < target; ++j) big[basis[j]] = Scalar<T>::to_int(z[j]);
            big[e] = -Scalar<T>::to_int(dk);
            const KernelVector v = KernelVector::canonical(primitive_normalize(big));
            for (int i = 0; i < K; ++i) key[i] = v[i];
            if (out.insert(key.data())) check_circuit_cap(out.size(), max_circuits);
          }
        }
      },
      offset, stride);
}

// ---------------------------------------------------------------------------
// Dual sweep: walk independent column subsets of a kernel-lattice basis G
// (one row per kernel generator).  A subset of size rank(G)-1 spans a
// corank-1 flat; the left-null covector y of those columns turns into the
// circuit y^T G, whose zero set is exactly that flat.  A greedy-lex pruning
// rule visits every flat once, so no deduplication pass is needed: a subtree
// is abandoned as soon as a previously skipped independent column falls into
// the span of the chosen prefix, which keeps only the lexicographically
// first generating subset of each flat alive.  Preferred when the corank is
// small.

template <typename T>
void dual_sweep_collect(const IntMatrix& g, int offset, int stride,
                        std::int64_t max_circuits, std::vector<KernelVector>& out) {
  const int rp = g.rows();
  const int K = g.cols();
  const int target = rp - 1;
  SubsetSweep<T> sweep(g, std::max(target, 0));

  std::vector<std::vector<T>> grows(rp, std::vector<T>(K));
  for (int r = 0; r < rp; ++r) {
    for (int c = 0; c < K; ++c) grows[r][c] = Scalar<T>::from_int(g.at(r, c));
  }

  std::vector<T> y;
  std::vector<std::int64_t> raw(K);
  IntVector big(K);

  detail::for_each_corank1_flat(
      sweep,
      [&] {
        sweep.null_covector(y);
        if constexpr (std::is_same_v<T, C64>) {
          for (int c = 0; c < K; ++c) {
            C64 acc(0);
            for (int r = 0; r < rp; ++r) {
              if (y[r].v != 0 && grows[r][c].v != 0) acc += y[r] * grows[r][c];
            }
            raw[c] = acc.v;
          }
          out.push_back(KernelVector::canonical(raw));
        } else {
          for (int c = 0; c < K; ++c) {
            Int acc(0);
            for (int r = 0; r < rp; ++r) {
              acc += Scalar<T>::to_int(y[r]) * Scalar<T>::to_int(grows[r][c]);
            }
            big[c] = acc;
          }
          out.push_back(KernelVector::canonical(primitive_normalize(big)));
        }
        check_circuit_cap(out.size(), max_circuits);
      },
      offset, stride);
}

// ---------------------------------------------------------------------------

void run_primal(const IntMatrix& a, int target, int threads, std::int64_t max_circuits,
                std::vector<KernelVector>& circuits) {
  const int K = a.cols();
  auto run_shard = [&](int offset, int stride, VecSet& out) {
    try {
      primal_sweep_collect<C64>(a, target, offset, stride, max_circuits, out);
    } catch (const Overflow64&) {
      out = VecSet(K);
      primal_sweep_collect<Int>(a, target, offset, stride, max_circuits, out);
    }
  };

  std::vector<VecSet> shards;
  shards.reserve(threads);
  for (int t = 0; t < threads; ++t) shards.emplace_back(K);
  if (threads == 1) {
    run_shard(0, 1, shards[0]);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          run_shard(t, threads, shards[t]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  VecSet merged(K);
  VecSet* total = threads == 1 ? &shards[0] : &merged;
  if (threads > 1) {
    for (const VecSet& s : shards) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (merged.insert(s.at(i))) check_circuit_cap(merged.size(), max_circuits);
      }
    }
  }
  circuits.reserve(total->size());
  std::vector<std::int64_t> entries(K);
  for (std::size_t i = 0; i < total->size(); ++i) {
    const std::int32_t* v = total->at(i);
    for (int c = 0; c < K; ++c) entries[c] = v[c];
    circuits.push_back(KernelVector::canonical(entries));
  }
}

void run_dual(const IntMatrix& a, int threads, std::int64_t max_circuits,
              std::vector<KernelVector>& circuits) {
  const std::vector<IntVector> kernel = kernel_lattice_basis(a);
  const int rp = static_cast<int>(kernel.size());
  const int K = a.cols();
  std::vector<Int> flat;
  flat.reserve(static_cast<std::size_t>(rp) * K);
  for (const IntVector& row : kernel) flat.insert(flat.end(), row.begin(), row.end());
  const IntMatrix g(rp, K, std::move(flat));

  auto run_shard = [&](int offset, int stride, std::vector<KernelVector>& out) {
    try {
      dual_sweep_collect<C64>(g, offset, stride, max_circuits, out);
    } catch (const Overflow64&) {
      out.clear();
      dual_sweep_collect<Int>(g, offset, stride, max_circuits, out);
    }
  };

  if (threads == 1) {
    run_shard(0, 1, circuits);
    return;
  }
  std::vector<std::vector<KernelVector>> shards(threads);
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        run_shard(t, threads, shards[t]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  for (auto& s : shards) {
    circuits.insert(circuits.end(), s.begin(), s.end());
    check_circuit_cap(circuits.size(), max_circuits);
  }
}

}  // namespace

CircuitBasis enumerate_circuits(const IntMatrix& a, const CircuitOptions& opts) {
  if (opts.threads < 1) {
    throw std::invalid_argument("enumerate_circuits: threads must be >= 1");
  }
  CircuitBasis basis;
  basis.source_digest = matrix_digest(a);
  basis.K = a.cols();
  basis.rank = rank(a);

  const int corank = basis.K - basis.rank;
  if (basis.K == 0 || corank == 0) return basis;  // trivial kernel, no circuits

  const int threads = std::min(opts.threads, basis.K);
  bool primal;
  switch (opts.orientation) {
    case CircuitOptions::Orientation::kPrimal:
      primal = true;
      break;
    case CircuitOptions::Orientation::kDual:
      primal = false;
      break;
    default:
      primal = basis.rank <= corank;
  }
  if (primal) {
    run_primal(a, basis.rank, threads, opts.max_circuits, basis.circuits);
  } else {
    run_dual(a, threads, opts.max_circuits, basis.circuits);
  }
  std::sort(basis.circuits.begin(), basis.circuits.end(), canonical_less);
  for (std::size_t i = 1; i < basis.circuits.size(); ++i) {
    if (basis.circuits[i] == basis.circuits[i - 1]) {
      throw std::logic_error("enumerate_circuits: duplicate circuit emitted");
    }
  }
  return basis;
}

KernelVector fundamental_circuit(const IntMatrix& a, const std::vector<int>& basis_cols,
                                 int e) {
  const int K = a.cols();
  if (e < 0 || e >= K) {
    throw std::invalid_argument("fundamental_circuit: column out of range");
  }
  SubsetSweep<Int> sweep(a, static_cast<int>(basis_cols.size()));
  for (int c : basis_cols) {
    if (c < 0 || c >= K) {
      throw std::invalid_argument("fundamental_circuit: column out of range");
    }
    if (c == e) {
      throw std::invalid_argument("fundamental_circuit: e must not be a basis column");
    }
    if (!sweep.push(c)) {
      throw std::invalid_argument("fundamental_circuit: basis columns are dependent");
    }
  }
  if (!sweep.is_dependent(e)) {
    throw std::invalid_argument("fundamental_circuit: column e is independent of the basis");
  }
  std::vector<Int> z;
  sweep.solve_scaled(e, z);
  IntVector v(K, Int(0));
  for (std::size_t j = 0; j < basis_cols.size(); ++j) v[basis_cols[j]] = z[j];
  v[e] = -sweep.pivot(sweep.depth());
  return KernelVector::canonical(primitive_normalize(std::move(v)));
}

std::vector<KernelVector> filter_by_support_size(const std::vector<KernelVector>& vectors,
                                                 int max_support) {
  std::vector<KernelVector> out;
  for (const KernelVector& v : vectors) {
    if (v.support_size() <= max_support) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::int64_t>> symmetry_generators(const FactorialDesign& design) {
  const std::int64_t n = design.size();
  const int d = design.factor_count();
  std::vector<std::vector<std::int64_t>> gens;

  auto add_gen = [&](auto&& remap_tuple) {
    std::vector<std::int64_t> perm(n);
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<int> t = design.point_tuple(i);
      remap_tuple(t);
      perm[i] = design.point_index(t);
    }
    gens.push_back(std::move(perm));
  };

  for (int k = 0; k < d; ++k) {
    for (int l = 0; l + 1 < design.levels()[k]; ++l) {
      add_gen([k, l](std::vector<int>& t) {
        if (t[k] == l) {
          t[k] = l + 1;
        } else if (t[k] == l + 1) {
          t[k] = l;
        }
      });
    }
  }
  for (int k = 0; k + 1 < d; ++k) {
    if (design.levels()[k] != design.levels()[k + 1]) continue;
    add_gen([k](std::vector<int>& t) { std::swap(t[k], t[k + 1]); });
  }
  return gens;
}

namespace {

struct Int32VecHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int32_t x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::vector<std::int32_t> value_pattern(const KernelVector& v) {
  std::vector<std::int32_t> pos, neg;
  pos.reserve(v.support_size());
  neg.reserve(v.support_size());
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    pos.push_back(v[i]);
    neg.push_back(-v[i]);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  return std::min(pos, neg);
}

std::vector<VectorClass> value_pattern_classes(const std::vector<KernelVector>& vectors) {
  // pattern -> (index of the smallest member seen, member count)
  std::unordered_map<std::vector<std::int32_t>, std::pair<std::size_t, std::int64_t>,
                     Int32VecHash>
      groups;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(value_pattern(vectors[i]), i, 1);
    if (!inserted) {
      ++it->second.second;
      if (canonical_less(vectors[i], vectors[it->second.first])) it->second.first = i;
    }
  }
  std::vector<VectorClass> classes;
  classes.reserve(groups.size());
  for (const auto& [pattern, group] : groups) {
    classes.push_back({vectors[group.first], group.second});
  }
  std::sort(classes.begin(), classes.end(), [](const VectorClass& a, const VectorClass& b) {
    return canonical_less(a.representative, b.representative);
  });
  return classes;
}

std::vector<VectorClass> orbit_classes(const std::vector<KernelVector>& vectors,
                                            const FactorialDesign& design) {
  const std::int64_t n = design.size();
  for (const KernelVector& v : vectors) {
    if (v.size() != n) {
      throw std::invalid_argument("orbit_classes: vector length must match design size");
    }
  }
  const auto gens = symmetry_generators(design);

  std::unordered_map<std::vector<std::int32_t>, std::size_t, Int32VecHash> index;
  index.reserve(vectors.size() * 2);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!index.emplace(vectors[i].entries(), i).second) {
      throw std::invalid_argument("orbit_classes: duplicate vector in input");
    }
  }

  std::vector<char> visited(vectors.size(), 0);
  std::vector<VectorClass> classes;
  std::vector<std::size_t> queue;
  std::vector<std::int32_t> image(n);

  for (std::size_t start = 0; start < vectors.size(); ++start) {
    if (visited[start] != 0) continue;
    visited[start] = 1;
    queue.assign(1, start);
    std::size_t rep = start;
    std::int64_t size = 0;
    while (!queue.empty()) {
      const std::size_t cur = queue.back();
      queue.pop_back();
      ++size;
      if (canonical_less(vectors[cur], vectors[rep])) rep = cur;
      const auto& v = vectors[cur].entries();
      for (const auto& perm : gens) {
        for (std::int64_t i = 0; i < n; ++i) image[perm[i]] = v[i];
        // Restore the canonical sign after permuting the entries.
        for (std::int64_t i = 0; i < n; ++i) {
          if (image[i] == 0) continue;
          if (image[i] < 0) {
            for (std::int64_t j = 0; j < n; ++j) image[j] = -image[j];
          }
          break;
        }
        const auto it = index.find(image);
        if (it == index.end()) {
          throw std::invalid_argument(
              "orbit_classes: set is not closed under the design symmetry group");
        }
        if (visited[it->second] == 0) {
          visited[it->second] = 1;
          queue.push_back(it->second);
        }
      }
    }
    classes.push_back({vectors[rep], size});
  }
  std::sort(classes.begin(), classes.end(), [](const VectorClass& a, const VectorClass& b) {
    return canonical_less(a.representative, b.representative);
  });
  return classes;
}

}  // namespace satfrac
