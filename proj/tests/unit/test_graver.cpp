#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/errors.hpp"
#include "satfrac/graver.hpp"
#include "satfrac/intmat.hpp"

using satfrac::CircuitBasis;
using satfrac::FactorialDesign;
using satfrac::GraverBasis;
using satfrac::GraverOptions;
using satfrac::Int;
using satfrac::IntMatrix;
using satfrac::IntVector;
using satfrac::KernelVector;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int span) {
  std::uniform_int_distribution<int> entry(-span, span);
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
  }
  return m;
}

std::vector<std::vector<std::int64_t>> as_int64_vectors(
    const std::vector<KernelVector>& vectors) {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(vectors.size());
  for (const KernelVector& v : vectors) {
    std::vector<std::int64_t> e(v.size());
    for (int i = 0; i < v.size(); ++i) e[i] = v[i];
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_all(const std::vector<KernelVector>& haystack,
                  const std::vector<KernelVector>& needles) {
  for (const KernelVector& n : needles) {
    if (std::find(haystack.begin(), haystack.end(), n) == haystack.end()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pair completion matches the boxed brute force on random matrices") {
  // Entry bound for the brute force: every Graver element is a conformal
  // nonnegative combination of at most k = dim ker(A) circuits lying in its
  // own orthant (Caratheodory applied to that cone).  A coefficient >= 1
  // would make its circuit conformally dominate the element, so for
  // non-circuit elements all coefficients are < 1 and
  //   ||g||inf < k * (largest circuit entry).
  // Circuits themselves satisfy the same bound trivially, so scanning the
  // box ||v||inf <= k * max-entry sees the whole Graver basis.
  std::mt19937_64 rng(20240820);
  int tested = 0;
  int skipped = 0;
  while (tested < 120 && skipped < 600) {
    const int rows = 1 + static_cast<int>(rng() % 3);
    const int cols = 4 + static_cast<int>(rng() % 3);  // K <= 6
    const IntMatrix a = random_matrix(rng, rows, cols, 2);
    const auto circuits = oracle::circuits_by_definition(a);
    std::int64_t max_entry = 0;
    for (const auto& c : circuits) {
      for (const Int& x : c) {
        const Int mag = boost::multiprecision::abs(x);
        if (mag > max_entry) max_entry = mag.convert_to<std::int64_t>();
      }
    }
    const std::int64_t corank = cols - oracle::rank_rational(a);
    const std::int64_t bound = corank * max_entry;
    if (bound > 6) {  // keep the box scan cheap; redraw instead
      ++skipped;
      continue;
    }
    ++tested;
    const auto expected = oracle::graver_by_box(a, bound);

    const GraverBasis warm = graver_basis(a);
    GraverOptions cold_opts;
    cold_opts.warm_start_with_circuits = false;
    const GraverBasis cold = graver_basis(a, cold_opts);

    CHECK(warm.complete);
    CHECK(cold.complete);
    CHECK(warm.K == cols);
    CHECK(warm.rank == cols - corank);
    CHECK(warm.source_digest == satfrac::matrix_digest(a));
    CHECK(as_int64_vectors(warm.elements) == expected);
    CHECK(as_int64_vectors(cold.elements) == expected);
    CHECK(std::is_sorted(warm.elements.begin(), warm.elements.end(),
                         satfrac::canonical_less));
  }
  CHECK(tested == 120);
}

TEST_CASE("the Graver basis contains every circuit") {
  std::mt19937_64 rng(20240821);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix a = random_matrix(rng, 2, 5, 2);
    const CircuitBasis circuits = enumerate_circuits(a);
    const GraverBasis graver = graver_basis(a);
    CHECK(contains_all(graver.elements, circuits.circuits));
  }
}

TEST_CASE("Graver elements of a design matrix are pairwise conformally incomparable") {
  const FactorialDesign d({2, 2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const GraverBasis graver = graver_basis(a);
  REQUIRE(graver.complete);
  REQUIRE_FALSE(graver.elements.empty());
  for (const KernelVector& v : graver.elements) {
    // Kernel membership.
    for (int r = 0; r < a.rows(); ++r) {
      Int acc(0);
      for (int c = 0; c < a.cols(); ++c) acc += a.at(r, c) * v[c];
      CHECK(acc == 0);
    }
    CHECK(is_primitive(v, graver));
  }
}

TEST_CASE("conformal_reduce cancels conformal sums and leaves the rest alone") {
  const FactorialDesign d({2, 2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const GraverBasis graver = graver_basis(a);
  REQUIRE(graver.elements.size() >= 2);

  // A conformal (orthant-respecting) sum must reduce to zero.
  const KernelVector& g = graver.elements.front();
  IntVector doubled(g.size());
  for (int i = 0; i < g.size(); ++i) doubled[i] = Int(2) * g[i];
  const IntVector reduced = conformal_reduce(doubled, graver.elements);
  CHECK(std::all_of(reduced.begin(), reduced.end(),
                    [](const Int& x) { return x == 0; }));

  // A vector outside the kernel cannot fully cancel.
  IntVector off(g.size(), Int(0));
  off[0] = 1;
  const IntVector stuck = conformal_reduce(off, graver.elements);
  CHECK_FALSE(std::all_of(stuck.begin(), stuck.end(),
                          [](const Int& x) { return x == 0; }));
}

TEST_CASE("a precomputed circuit seed reproduces the default result") {
  const FactorialDesign d({2, 3});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 1));
  const CircuitBasis circuits = enumerate_circuits(a);
  REQUIRE_FALSE(circuits.circuits.empty());
  GraverOptions opts;
  opts.circuit_seed = &circuits.circuits;
  const GraverBasis seeded = graver_basis(a, opts);
  const GraverBasis plain = graver_basis(a);
  CHECK_FALSE(seeded.elements.empty());
  CHECK(seeded.elements == plain.elements);
}

TEST_CASE("seed vectors are validated against the matrix") {
  // Order 1 keeps a nontrivial kernel; the full-rank order-2 model would be
  // answered before the seed is ever inspected.
  const FactorialDesign d({2, 3});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 1));

  // Wrong length.
  std::vector<KernelVector> short_seed{
      KernelVector::canonical(std::vector<std::int64_t>{1, -1})};
  GraverOptions opts;
  opts.circuit_seed = &short_seed;
  CHECK_THROWS_AS(graver_basis(a, opts), std::invalid_argument);

  // Right length but not in the kernel.
  std::vector<std::int64_t> junk(a.cols(), 0);
  junk[0] = 1;
  std::vector<KernelVector> bad_seed{KernelVector::canonical(junk)};
  opts.circuit_seed = &bad_seed;
  CHECK_THROWS_AS(graver_basis(a, opts), std::invalid_argument);
}

TEST_CASE("guards trip as LimitError or hand back a partial basis") {
  const FactorialDesign d({2, 2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis circuits = enumerate_circuits(a);

  GraverOptions strict;
  strict.max_elements = 10;  // far fewer than the circuit seed alone
  CHECK_THROWS_AS(graver_basis(a, strict), satfrac::LimitError);

  GraverOptions few_ops;
  few_ops.max_pair_ops = 5;
  CHECK_THROWS_AS(graver_basis(a, few_ops), satfrac::LimitError);

  few_ops.allow_partial = true;
  const GraverBasis partial = graver_basis(a, few_ops);
  CHECK_FALSE(partial.complete);
  // A truncated run still carries every seeded circuit.
  CHECK(contains_all(partial.elements, circuits.circuits));
}

TEST_CASE("full-column-rank matrices have an empty Graver basis") {
  IntMatrix a(2, 2);
  a.at(0, 0) = 1;
  a.at(1, 1) = 1;
  const GraverBasis graver = graver_basis(a);
  CHECK(graver.complete);
  CHECK(graver.elements.empty());
  CHECK(graver.rank == 2);
}
