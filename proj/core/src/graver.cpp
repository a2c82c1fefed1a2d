#include "satfrac/graver.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "internal/vec_set.hpp"
#include "satfrac/circuits.hpp"
#include "satfrac/errors.hpp"

namespace satfrac {

namespace {

using detail::VecSet;

constexpr int kMaskWords = 2;
constexpr int kMaxMaskedColumns = 64 * kMaskWords;

using Mask = std::array<std::uint64_t, kMaskWords>;

bool mask_subset(const Mask& a, const Mask& b) {
  for (int w = 0; w < kMaskWords; ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

// dir = +1 tests g <= v conformally, dir = -1 tests -g <= v conformally,
// both over the signed entrywise order.
bool value_dominates(const std::vector<std::int32_t>& g, const std::vector<std::int32_t>& sup,
                     const std::vector<std::int64_t>& v, int dir) {
  for (std::int32_t idx : sup) {
    const std::int64_t gj = static_cast<std::int64_t>(dir) * g[idx];
    if (gj > 0 ? v[idx] < gj : v[idx] > gj) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pair completion over the kernel lattice (Pottier's algorithm).  Starting
// from a lattice generating set, repeatedly form f+g and f-g for set members,
// take the conformal normal form, and add any nonzero remainder until the set
// is closed.  On termination every kernel vector is a conformal sum of set
// members, so the conformally minimal elements of the set are exactly the
// Graver basis.  Support minimality is a strictly weaker notion, which is why
// this module does not reuse the circuit sweep: a support-based enumeration
// can only ever produce circuits and misses Graver elements whose support
// strictly contains a circuit support.

struct CompletionSet {
  int K;
  std::vector<std::vector<std::int32_t>> vals;
  std::vector<std::vector<std::int32_t>> sup;
  std::vector<Mask> pos, neg;
  std::vector<std::vector<int>> bucket;  // keyed by min support index
  VecSet seen;

  explicit CompletionSet(int k) : K(k), bucket(k), seen(k) {}

  std::size_t size() const { return vals.size(); }

  // Canonicalizes w (gcd + leading sign) and appends it when new.  Dividing
  // by the gcd is sound because the integer kernel of a matrix is saturated:
  // w/g still solves Aw = 0.  The primitive vector conformally dominates w,
  // so swapping it in preserves conformal representability.
  bool insert(const std::vector<std::int64_t>& w) {
    std::int64_t g = 0;
    for (std::int64_t x : w) g = std::gcd(g, x);
    if (g == 0) return false;
    std::int64_t sign = 0;
    for (std::int64_t x : w) {
      if (x != 0) {
        sign = x > 0 ? 1 : -1;
        break;
      }
    }
    std::vector<std::int32_t> canon(K);
    for (int i = 0; i < K; ++i) {
      const std::int64_t v = sign * (w[i] / g);
      if (v < INT32_MIN || v > INT32_MAX) {
        throw LimitError("graver_basis: completion entries exceed 32 bits");
      }
      canon[i] = static_cast<std::int32_t>(v);
    }
    if (!seen.insert(canon.data())) return false;

    Mask p{}, n{};
    std::vector<std::int32_t> s;
    for (int i = 0; i < K; ++i) {
      if (canon[i] > 0) p[i >> 6] |= std::uint64_t(1) << (i & 63);
      if (canon[i] < 0) n[i >> 6] |= std::uint64_t(1) << (i & 63);
      if (canon[i] != 0) s.push_back(i);
    }
    bucket[s.front()].push_back(static_cast<int>(vals.size()));
    vals.push_back(std::move(canon));
    sup.push_back(std::move(s));
    pos.push_back(p);
    neg.push_back(n);
    return true;
  }

  // Conformal normal form of w in place; true when w ends nonzero.
  bool normal_form(std::vector<std::int64_t>& w) const {
    Mask wp{}, wn{};
    for (int i = 0; i < K; ++i) {
      if (w[i] > 0) wp[i >> 6] |= std::uint64_t(1) << (i & 63);
      if (w[i] < 0) wn[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    for (;;) {
      bool reduced = false;
      for (int word = 0; word < kMaskWords && !reduced; ++word) {
        std::uint64_t bits = wp[word] | wn[word];
        while (bits != 0 && !reduced) {
          const int idx = word * 64 + __builtin_ctzll(bits);
          bits &= bits - 1;
          for (int id : bucket[idx]) {
            int dir = 0;
            if (mask_subset(pos[id], wp) && mask_subset(neg[id], wn) &&
                value_dominates(vals[id], sup[id], w, +1)) {
              dir = +1;
            } else if (mask_subset(pos[id], wn) && mask_subset(neg[id], wp) &&
                       value_dominates(vals[id], sup[id], w, -1)) {
              dir = -1;
            }
            if (dir == 0) continue;
            for (std::int32_t i : sup[id]) {
              w[i] -= static_cast<std::int64_t>(dir) * vals[id][i];
              const std::uint64_t bit = std::uint64_t(1) << (i & 63);
              wp[i >> 6] &= ~bit;
              wn[i >> 6] &= ~bit;
              if (w[i] > 0) wp[i >> 6] |= bit;
              if (w[i] < 0) wn[i >> 6] |= bit;
            }
            reduced = true;
            break;
          }
        }
      }
      if (!reduced) break;
    }
    for (int word = 0; word < kMaskWords; ++word) {
      if ((wp[word] | wn[word]) != 0) return true;
    }
    return false;
  }
};

bool conformal(const Mask& fp, const Mask& fn, const Mask& gp, const Mask& gn) {
  for (int w = 0; w < kMaskWords; ++w) {
    if ((fp[w] & gn[w]) != 0 || (fn[w] & gp[w]) != 0) return false;
  }
  return true;
}

bool run_graver_completion(const IntMatrix& a, const GraverOptions& opts,
                           std::vector<KernelVector>& elements) {
  const int K = a.cols();
  if (K > kMaxMaskedColumns) {
    throw LimitError("graver_basis: completion supports at most 128 columns");
  }
  CompletionSet set(K);

  std::vector<std::int64_t> w(K);
  auto insert_vector = [&](const auto& entries) {
    for (int i = 0; i < K; ++i) w[i] = static_cast<std::int64_t>(entries[i]);
    set.insert(w);
  };
  for (const IntVector& b : kernel_lattice_basis(a)) {
    std::vector<std::int64_t> row(K);
    for (int i = 0; i < K; ++i) {
      if (b[i] < INT32_MIN || b[i] > INT32_MAX) {
        throw LimitError("graver_basis: kernel basis entries exceed 32 bits");
      }
      row[i] = b[i].convert_to<std::int64_t>();
    }
    set.insert(row);
  }
  if (opts.warm_start_with_circuits) {
    if (opts.circuit_seed != nullptr) {
      for (const KernelVector& c : *opts.circuit_seed) {
        if (c.size() != K) {
          throw std::invalid_argument("graver_basis: circuit seed length mismatch");
        }
        const std::vector<int> sup = c.support();
        for (int r = 0; r < a.rows(); ++r) {
          Int acc(0);
          for (int i : sup) acc += a.at(r, i) * c[i];
          if (acc != 0) {
            throw std::invalid_argument(
                "graver_basis: circuit seed vector is not in the kernel");
          }
        }
        insert_vector(c.entries());
      }
    } else {
      CircuitOptions copts;
      copts.threads = opts.threads;
      for (const KernelVector& c : enumerate_circuits(a, copts).circuits) {
        insert_vector(c.entries());
      }
    }
  }

  bool capped = opts.max_elements > 0 &&
                static_cast<std::int64_t>(set.size()) > opts.max_elements;
  std::int64_t pair_ops = 0;
  std::vector<std::int64_t> cand(K);
  for (std::size_t t = 1; t < set.size() && !capped; ++t) {
    for (std::size_t s = 0; s < t && !capped; ++s) {
      if (opts.max_pair_ops > 0 && ++pair_ops > opts.max_pair_ops) {
        capped = true;
        break;
      }
      const bool sum_conformal = conformal(set.pos[s], set.neg[s], set.pos[t], set.neg[t]);
      const bool diff_conformal = conformal(set.pos[s], set.neg[s], set.neg[t], set.pos[t]);
      for (int which = 0; which < 2; ++which) {
        if (which == 0 ? sum_conformal : diff_conformal) continue;
        const int dir = which == 0 ? 1 : -1;
        for (int i = 0; i < K; ++i) {
          cand[i] = static_cast<std::int64_t>(set.vals[s][i]) + dir * set.vals[t][i];
        }
        if (set.normal_form(cand)) {
          set.insert(cand);
          if (opts.max_elements > 0 &&
              static_cast<std::int64_t>(set.size()) > opts.max_elements) {
            capped = true;
            break;
          }
        }
      }
    }
  }

  // Keep only the conformally minimal elements.
  for (std::size_t id = 0; id < set.size(); ++id) {
    std::vector<std::int64_t> v(K);
    for (int i = 0; i < K; ++i) v[i] = set.vals[id][i];
    bool dominated = false;
    for (std::int32_t idx : set.sup[id]) {
      for (int other : set.bucket[idx]) {
        if (static_cast<std::size_t>(other) == id) continue;
        if ((mask_subset(set.pos[other], set.pos[id]) &&
             mask_subset(set.neg[other], set.neg[id]) &&
             value_dominates(set.vals[other], set.sup[other], v, +1)) ||
            (mask_subset(set.pos[other], set.neg[id]) &&
             mask_subset(set.neg[other], set.pos[id]) &&
             value_dominates(set.vals[other], set.sup[other], v, -1))) {
          dominated = true;
          break;
        }
      }
      if (dominated) break;
    }
    if (!dominated) {
      std::vector<std::int64_t> entries(K);
      for (int i = 0; i < K; ++i) entries[i] = set.vals[id][i];
      elements.push_back(KernelVector::canonical(entries));
    }
  }
  return !capped;
}

}  // namespace

GraverBasis graver_basis(const IntMatrix& a, const GraverOptions& opts) {
  if (opts.threads < 1) {
    throw std::invalid_argument("graver_basis: threads must be >= 1");
  }
  GraverBasis basis;
  basis.source_digest = matrix_digest(a);
  basis.K = a.cols();
  basis.rank = rank(a);
  if (basis.K == 0 || basis.K == basis.rank) return basis;

  basis.complete = run_graver_completion(a, opts, basis.elements);
  if (!basis.complete && !opts.allow_partial) {
    throw LimitError("graver_basis: resource guard exceeded");
  }
  std::sort(basis.elements.begin(), basis.elements.end(), canonical_less);
  for (std::size_t i = 1; i < basis.elements.size(); ++i) {
    if (basis.elements[i] == basis.elements[i - 1]) {
      throw std::logic_error("graver_basis: duplicate element emitted");
    }
  }
  return basis;
}

IntVector conformal_reduce(IntVector v, const std::vector<KernelVector>& basis) {
  const int K = static_cast<int>(v.size());
  for (;;) {
    bool reduced = false;
    for (const KernelVector& g : basis) {
      if (g.size() != K) {
        throw std::invalid_argument("conformal_reduce: length mismatch");
      }
      for (int dir : {+1, -1}) {
        bool ok = true;
        bool nonzero = false;
        for (int i = 0; i < K && ok; ++i) {
          const std::int64_t gj = static_cast<std::int64_t>(dir) * g[i];
          if (gj == 0) continue;
          nonzero = true;
          if (gj > 0 ? v[i] < gj : v[i] > gj) ok = false;
        }
        if (!ok || !nonzero) continue;
        for (int i = 0; i < K; ++i) v[i] -= Int(dir) * g[i];
        reduced = true;
        break;
      }
      if (reduced) break;
    }
    if (!reduced) return v;
  }
}

bool is_primitive(const KernelVector& v, const GraverBasis& basis) {
  for (const KernelVector& g : basis.elements) {
    if (g == v || g.size() != v.size()) continue;
    for (int dir : {+1, -1}) {
      bool ok = true;
      for (int i = 0; i < v.size() && ok; ++i) {
        const std::int32_t gj = dir * g[i];
        if (gj == 0) continue;
        if (gj > 0 ? v[i] < gj : v[i] > gj) ok = false;
      }
      if (ok) return false;
    }
  }
  return true;
}

bool is_primitive(const KernelVector& v, const IntMatrix& a) {
  return is_primitive(v, graver_basis(a));
}

}  // namespace satfrac
