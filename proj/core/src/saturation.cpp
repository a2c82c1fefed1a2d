#include "satfrac/saturation.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "internal/checked_int.hpp"
#include "internal/sweep.hpp"
#include "satfrac/errors.hpp"

namespace satfrac {

namespace {

Int binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int num(1);
  for (std::int64_t i = 1; i <= k; ++i) {
    num *= n - k + i;
    num /= i;  // exact: the running product is a binomial coefficient
  }
  return num;
}

}  // namespace

CircuitSupportIndex::CircuitSupportIndex(const CircuitBasis& basis, int p)
    : K_(basis.K), p_(p), words_((basis.K + 63) / 64) {
  if (p < 0) throw std::invalid_argument("CircuitSupportIndex: negative p");
  for (const KernelVector& c : basis.circuits) {
    if (c.support_size() > p) continue;
    circuits_.push_back(c);
    for (int w = 0; w < words_; ++w) masks_.push_back(0);
    std::uint64_t* mask = &masks_[(circuits_.size() - 1) * words_];
    for (int i : c.support()) mask[i >> 6] |= std::uint64_t(1) << (i & 63);
  }
}

std::optional<std::size_t> CircuitSupportIndex::first_contained(
    const std::vector<std::int64_t>& points) const {
  std::vector<std::uint64_t> fmask(words_, 0);
  for (std::int64_t p : points) {
    if (p < 0 || p >= K_) {
      throw std::invalid_argument("first_contained: point out of range");
    }
    fmask[p >> 6] |= std::uint64_t(1) << (p & 63);
  }
  for (std::size_t i = 0; i < circuits_.size(); ++i) {
    const std::uint64_t* mask = &masks_[i * words_];
    bool inside = true;
    for (int w = 0; w < words_ && inside; ++w) {
      inside = (mask[w] & ~fmask[w]) == 0;
    }
    if (inside) return i;
  }
  return std::nullopt;
}

SaturationReport is_saturated_by_circuits(const Fraction& fraction,
                                          const CircuitSupportIndex& index) {
  if (fraction.size() != index.p()) {
    throw std::invalid_argument("is_saturated_by_circuits: fraction must have rank-many points");
  }
  SaturationReport report;
  report.method = SaturationMethod::kCircuits;
  const auto hit = index.first_contained(fraction.points());
  report.saturated = !hit.has_value();
  if (hit) report.blocking_circuit = index.circuit(*hit);
  return report;
}

SaturationReport is_saturated_by_circuits(const Fraction& fraction,
                                          const CircuitBasis& basis) {
  return is_saturated_by_circuits(fraction, CircuitSupportIndex(basis, basis.rank));
}

SaturationReport is_saturated_by_determinant(const Fraction& fraction, const IntMatrix& a) {
  if (fraction.size() != a.rows()) {
    throw std::invalid_argument(
        "is_saturated_by_determinant: fraction size must equal matrix row count");
  }
  if (fraction.design().size() != a.cols()) {
    throw std::invalid_argument(
        "is_saturated_by_determinant: design size must equal matrix column count");
  }
  std::vector<int> cols;
  cols.reserve(fraction.points().size());
  for (std::int64_t p : fraction.points()) cols.push_back(static_cast<int>(p));
  SaturationReport report;
  report.method = SaturationMethod::kDeterminant;
  report.determinant = determinant(a.select_columns(cols));
  report.saturated = *report.determinant != 0;
  return report;
}

namespace {

template <typename T>
std::int64_t count_bases(const IntMatrix& m, int target, int offset, int stride) {
  detail::SubsetSweep<T> sweep(m, target);
  std::int64_t leaves = 0;
  detail::for_each_independent_subset(
      sweep, target, [&] { ++leaves; }, offset, stride);
  return leaves;
}

std::int64_t count_bases_threaded(const IntMatrix& m, int target, int threads) {
  auto run = [&](int offset, int stride) {
    try {
      return count_bases<detail::C64>(m, target, offset, stride);
    } catch (const detail::Overflow64&) {
      return count_bases<Int>(m, target, offset, stride);
    }
  };
  if (threads <= 1) return run(0, 1);
  std::vector<std::int64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex mu;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        partial[t] = run(t, threads);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  std::int64_t total = 0;
  for (std::int64_t x : partial) total += x;
  return total;
}

}  // namespace

SaturationCounts count_saturated(const IntMatrix& a, const CountOptions& opts) {
  if (opts.threads < 1) {
    throw std::invalid_argument("count_saturated: threads must be >= 1");
  }
  const int K = a.cols();
  const int r = rank(a);
  if (r != a.rows()) {
    throw std::invalid_argument("count_saturated: matrix must have full row rank");
  }
  SaturationCounts counts;
  counts.total = binomial(K, r);

  // Saturated p-subsets are exactly the column bases, and the column matroid
  // and its dual have equally many bases (complementation), so sweep
  // whichever side has the smaller rank.
  std::int64_t bases = 0;
  if (r <= K - r) {
    bases = count_bases_threaded(a, r, opts.threads);
  } else {
    const std::vector<IntVector> kernel = kernel_lattice_basis(a);
    const int rp = static_cast<int>(kernel.size());
    IntMatrix g(rp, K);
    for (int i = 0; i < rp; ++i) {
      for (int c = 0; c < K; ++c) g.at(i, c) = kernel[i][c];
    }
    bases = rp == 0 ? 1 : count_bases_threaded(g, rp, opts.threads);
  }
  counts.saturated = bases;
  counts.non_saturated = counts.total - counts.saturated;
  return counts;
}

SaturationCounts count_saturated_by_circuits(const IntMatrix& a, const CircuitBasis& basis,
                                             const CountOptions& opts) {
  const int K = a.cols();
  const int p = basis.rank;
  if (basis.K != K) {
    throw std::invalid_argument("count_saturated_by_circuits: basis does not match matrix");
  }
  SaturationCounts counts;
  counts.total = binomial(K, p);
  if (opts.max_subsets > 0 && counts.total > opts.max_subsets) {
    throw LimitError("count_saturated_by_circuits: subset cap exceeded");
  }

  // Point -> circuits whose support contains it, so a blocked subset is
  // detected the moment its newest point completes some circuit support.
  const int words = (K + 63) / 64;
  std::vector<std::vector<std::uint64_t>> cmask;
  std::vector<std::vector<int>> by_point(K);
  for (const KernelVector& c : basis.circuits) {
    if (c.support_size() > p) continue;
    std::vector<std::uint64_t> mask(words, 0);
    for (int i : c.support()) mask[i >> 6] |= std::uint64_t(1) << (i & 63);
    for (int i : c.support()) by_point[i].push_back(static_cast<int>(cmask.size()));
    cmask.push_back(std::move(mask));
  }

  std::vector<std::uint64_t> fmask(words, 0);
  Int non_saturated(0);
  Int saturated(0);
  auto rec = [&](auto&& self, int from, int chosen) -> void {
    const int need = p - chosen;
    for (int q = from; q <= K - need; ++q) {
      fmask[q >> 6] |= std::uint64_t(1) << (q & 63);
      bool blocked = false;
      for (int ci : by_point[q]) {
        bool inside = true;
        for (int w = 0; w < words && inside; ++w) {
          inside = (cmask[ci][w] & ~fmask[w]) == 0;
        }
        if (inside) {
          blocked = true;
          break;
        }
      }
      if (blocked) {
        // Every completion keeps the contained circuit: all
        // C(K-1-q, need-1) supersets are non-saturated.
        non_saturated += binomial(K - 1 - q, need - 1);
      } else if (need == 1) {
        saturated += 1;
      } else {
        self(self, q + 1, chosen + 1);
      }
      fmask[q >> 6] &= ~(std::uint64_t(1) << (q & 63));
    }
  };
  if (p == 0) {
    saturated = 1;
  } else {
    rec(rec, 0, 0);
  }
  counts.saturated = saturated;
  counts.non_saturated = non_saturated;
  if (counts.saturated + counts.non_saturated != counts.total) {
    throw std::logic_error("count_saturated_by_circuits: counts do not add up");
  }
  return counts;
}

void export_ilp(const CircuitBasis& basis, int p, std::ostream& os) {
  os << "\\ Saturated-fraction feasibility model\n";
  os << "\\ binaries y1..y" << basis.K << " pick design points; any 0/1 point with\n";
  os << "\\ every circuit support broken and exactly " << p
     << " points chosen is a saturated fraction.\n";
  os << "Minimize\n obj: 0 y1\nSubject To\n";
  std::size_t row = 0;
  for (const KernelVector& c : basis.circuits) {
    if (c.support_size() > p) continue;
    os << " c" << ++row << ":";
    const std::vector<int> supp = c.support();
    for (std::size_t i = 0; i < supp.size(); ++i) {
      os << (i == 0 ? " " : " + ") << 'y' << supp[i] + 1;
    }
    os << " <= " << supp.size() - 1 << '\n';
  }
  os << " size:";
  for (int i = 0; i < basis.K; ++i) os << (i == 0 ? " " : " + ") << 'y' << i + 1;
  os << " = " << p << '\n';
  os << "Binary\n";
  for (int i = 0; i < basis.K; ++i) os << " y" << i + 1 << '\n';
  os << "End\n";
}

}  // namespace satfrac
