#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/errors.hpp"
#include "satfrac/intmat.hpp"

using satfrac::CircuitBasis;
using satfrac::CircuitOptions;
using satfrac::FactorialDesign;
using satfrac::Int;
using satfrac::IntMatrix;
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

std::vector<std::vector<Int>> as_entry_vectors(const std::vector<KernelVector>& vectors) {
  std::vector<std::vector<Int>> out;
  out.reserve(vectors.size());
  for (const KernelVector& v : vectors) out.push_back(v.to_int_vector());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("circuit enumeration matches the subset-scan oracle on random matrices") {
  std::mt19937_64 rng(20240810);
  int nonempty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 2 + static_cast<int>(rng() % 8);  // K <= 9
    const IntMatrix a = random_matrix(rng, rows, cols, 3);
    const auto expected = oracle::circuits_by_definition(a);
    if (!expected.empty()) ++nonempty;

    const CircuitBasis basis = enumerate_circuits(a);
    CHECK(basis.K == cols);
    CHECK(basis.rank == oracle::rank_rational(a));
    CHECK(basis.source_digest == satfrac::matrix_digest(a));
    CHECK(as_entry_vectors(basis.circuits) == expected);
    CHECK(std::is_sorted(basis.circuits.begin(), basis.circuits.end(),
                         satfrac::canonical_less));
  }
  CHECK(nonempty > 150);  // the sweep was not vacuous
}

TEST_CASE("both sweep orientations agree with the oracle") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 3 + static_cast<int>(rng() % 6);
    const IntMatrix a = random_matrix(rng, rows, cols, 2);
    const auto expected = oracle::circuits_by_definition(a);

    CircuitOptions primal;
    primal.orientation = CircuitOptions::Orientation::kPrimal;
    CircuitOptions dual;
    dual.orientation = CircuitOptions::Orientation::kDual;
    CHECK(as_entry_vectors(enumerate_circuits(a, primal).circuits) == expected);
    CHECK(as_entry_vectors(enumerate_circuits(a, dual).circuits) == expected);
  }
}

TEST_CASE("circuits of a design matrix are insensitive to the thread count") {
  const FactorialDesign d({2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  CircuitOptions two;
  two.threads = 2;
  CHECK(enumerate_circuits(a).circuits == enumerate_circuits(a, two).circuits);
}

TEST_CASE("max_circuits guard aborts oversized enumerations") {
  const FactorialDesign d({2, 2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  CircuitOptions opts;
  opts.max_circuits = 10;  // there are far more
  CHECK_THROWS_AS(enumerate_circuits(a, opts), satfrac::LimitError);
}

TEST_CASE("fundamental_circuit reproduces the circuit through a dependent column") {
  std::mt19937_64 rng(20240812);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 2);
    const int cols = 4 + static_cast<int>(rng() % 3);
    const IntMatrix a = random_matrix(rng, rows, cols, 2);
    const int r = satfrac::rank(a);
    if (r == 0) continue;
    // Greedy independent column set.
    std::vector<int> basis_cols;
    for (int c = 0; c < cols && static_cast<int>(basis_cols.size()) < r; ++c) {
      std::vector<int> trial_cols = basis_cols;
      trial_cols.push_back(c);
      if (satfrac::rank(a.select_columns(trial_cols)) ==
          static_cast<int>(trial_cols.size())) {
        basis_cols = trial_cols;
      }
    }
    for (int e = 0; e < cols; ++e) {
      if (std::find(basis_cols.begin(), basis_cols.end(), e) != basis_cols.end()) continue;
      const KernelVector f = fundamental_circuit(a, basis_cols, e);
      // It is a kernel vector supported in basis_cols + {e} and hits e.
      CHECK(f[e] != 0);
      for (int row = 0; row < rows; ++row) {
        Int acc(0);
        for (int c = 0; c < cols; ++c) acc += a.at(row, c) * f[c];
        CHECK(acc == 0);
      }
      for (int c = 0; c < cols; ++c) {
        if (f[c] == 0 || c == e) continue;
        CHECK(std::find(basis_cols.begin(), basis_cols.end(), c) != basis_cols.end());
      }
      // Support-minimality: it appears in the full circuit list.
      const CircuitBasis all = enumerate_circuits(a);
      CHECK(std::find(all.circuits.begin(), all.circuits.end(), f) != all.circuits.end());
    }
  }
}

TEST_CASE("filter_by_support_size keeps exactly the small-support vectors") {
  const FactorialDesign d({2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis basis = enumerate_circuits(a);
  REQUIRE_FALSE(basis.circuits.empty());
  int smallest = basis.circuits.front().support_size();
  const auto kept = filter_by_support_size(basis.circuits, smallest);
  CHECK_FALSE(kept.empty());
  for (const KernelVector& v : kept) CHECK(v.support_size() <= smallest);
  std::size_t larger = 0;
  for (const KernelVector& v : basis.circuits) {
    if (v.support_size() > smallest) ++larger;
  }
  CHECK(kept.size() + larger == basis.circuits.size());
  CHECK(filter_by_support_size(basis.circuits, 0).empty());
}

TEST_CASE("value_pattern normalizes the signed entry multiset up to sign") {
  const auto mk = [](std::vector<std::int64_t> e) {
    return KernelVector::canonical(e);
  };
  CHECK(satfrac::value_pattern(mk({0, 2, -1, 1, -2})) ==
        std::vector<std::int32_t>{-2, -1, 1, 2});
  // Asymmetric multiset: global sign picked to make it lexicographically least.
  CHECK(satfrac::value_pattern(mk({1, 1, -2})) == std::vector<std::int32_t>{-2, 1, 1});
  CHECK(satfrac::value_pattern(mk({-1, -1, 2})) == std::vector<std::int32_t>{-2, 1, 1});
  // Length differences matter, zeros do not appear.
  CHECK(satfrac::value_pattern(mk({1, 0, -1})) == std::vector<std::int32_t>{-1, 1});
}

TEST_CASE("value-pattern classes partition the vectors with minimal representatives") {
  const FactorialDesign d({2, 2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis basis = enumerate_circuits(a);
  const auto classes = satfrac::value_pattern_classes(basis.circuits);
  std::int64_t total = 0;
  std::set<std::vector<std::int32_t>> seen;
  for (const auto& cls : classes) {
    total += cls.size;
    CHECK(seen.insert(satfrac::value_pattern(cls.representative)).second);
    // Representative is the canonical_less-least member of its class.
    for (const KernelVector& v : basis.circuits) {
      if (satfrac::value_pattern(v) == satfrac::value_pattern(cls.representative)) {
        CHECK_FALSE(canonical_less(v, cls.representative));
      }
    }
  }
  CHECK(total == static_cast<std::int64_t>(basis.circuits.size()));
}

TEST_CASE("symmetry generators are design automorphisms of the kernel") {
  const FactorialDesign d({2, 3, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const auto gens = symmetry_generators(d);
  CHECK_FALSE(gens.empty());
  const CircuitBasis basis = enumerate_circuits(a);
  std::set<KernelVector, bool (*)(const KernelVector&, const KernelVector&)> circuit_set(
      satfrac::canonical_less);
  for (const KernelVector& v : basis.circuits) circuit_set.insert(v);
  for (const auto& perm : gens) {
    REQUIRE(static_cast<std::int64_t>(perm.size()) == d.size());
    // Permutation sanity: a bijection on points.
    std::vector<bool> hit(perm.size(), false);
    for (std::int64_t image : perm) {
      REQUIRE(image >= 0);
      REQUIRE(image < d.size());
      CHECK_FALSE(hit[image]);
      hit[image] = true;
    }
    // Acting on any circuit gives a circuit.
    for (const KernelVector& v : basis.circuits) {
      std::vector<std::int64_t> moved(v.size());
      for (int i = 0; i < v.size(); ++i) moved[perm[i]] = v[i];
      CHECK(circuit_set.count(KernelVector::canonical(moved)) == 1);
    }
  }
}

TEST_CASE("orbit classes refine value-pattern classes and partition the set") {
  const FactorialDesign d({2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis basis = enumerate_circuits(a);
  const auto orbits = orbit_classes(basis.circuits, d);
  const auto patterns = satfrac::value_pattern_classes(basis.circuits);
  std::int64_t total = 0;
  for (const auto& cls : orbits) total += cls.size;
  CHECK(total == static_cast<std::int64_t>(basis.circuits.size()));
  CHECK(orbits.size() >= patterns.size());
  // Each orbit lies inside one value-pattern class: its representative's
  // pattern must be one of the pattern representatives' patterns.
  std::set<std::vector<std::int32_t>> pattern_keys;
  for (const auto& cls : patterns) {
    pattern_keys.insert(satfrac::value_pattern(cls.representative));
  }
  for (const auto& cls : orbits) {
    CHECK(pattern_keys.count(satfrac::value_pattern(cls.representative)) == 1);
  }
}
