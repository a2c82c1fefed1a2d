#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "satfrac/design.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/unimodular.hpp"

using satfrac::FactorialDesign;
using satfrac::Int;
using satfrac::IntMatrix;
using satfrac::Tri;
using satfrac::UnimodularityReport;

namespace {

IntMatrix random_pm1_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> entry(-1, 1);
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
  }
  return m;
}

// Incidence matrix of a random digraph: one column per arc, +1/-1 at the
// endpoints.  Network matrices like this are totally unimodular.
IntMatrix random_digraph_incidence(std::mt19937_64& rng, int nodes, int arcs) {
  IntMatrix m(nodes, arcs);
  std::uniform_int_distribution<int> node(0, nodes - 1);
  for (int a = 0; a < arcs; ++a) {
    int u = node(rng);
    int v = node(rng);
    while (v == u) v = node(rng);
    m.at(u, a) = 1;
    m.at(v, a) = -1;
  }
  return m;
}

// Consecutive-ones matrices (each row an interval of ones) are totally
// unimodular as well.
IntMatrix random_interval_matrix(std::mt19937_64& rng, int rows, int cols) {
  IntMatrix m(rows, cols);
  std::uniform_int_distribution<int> pos(0, cols - 1);
  for (int r = 0; r < rows; ++r) {
    int lo = pos(rng);
    int hi = pos(rng);
    if (lo > hi) std::swap(lo, hi);
    for (int c = lo; c <= hi; ++c) m.at(r, c) = 1;
  }
  return m;
}

}  // namespace

TEST_CASE("total unimodularity matches the all-minors brute force") {
  std::mt19937_64 rng(20240830);
  int tu_seen = 0;
  int non_tu_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 4);
    const int cols = 2 + static_cast<int>(rng() % 4);
    IntMatrix m;
    switch (trial % 3) {
      case 0:
        m = random_pm1_matrix(rng, rows, cols);
        break;
      case 1:
        m = random_digraph_incidence(rng, rows + 1, cols);
        break;
      default:
        m = random_interval_matrix(rng, rows, cols);
        break;
    }
    const bool expected = oracle::tu_by_minors(m);
    (expected ? tu_seen : non_tu_seen) += 1;
    const UnimodularityReport report = satfrac::is_totally_unimodular(m);
    REQUIRE(report.totally_unimodular != Tri::kUnknown);
    CHECK((report.totally_unimodular == Tri::kTrue) == expected);
    if (report.totally_unimodular == Tri::kFalse) {
      // At least one refutation witness must be attached and check out.
      const bool has_witness =
          report.violating_minor.has_value() || report.violating_rows.has_value();
      CHECK(has_witness);
      if (report.violating_minor) {
        const IntMatrix sub = m.select_rows(report.violating_minor->rows)
                                  .select_columns(report.violating_minor->cols);
        const Int det = satfrac::determinant(sub);
        CHECK(det == report.violating_minor->value);
        CHECK(boost::multiprecision::abs(det) > 1);
      }
    }
  }
  // The mix above must exercise both verdicts.
  CHECK(tu_seen > 10);
  CHECK(non_tu_seen > 10);
}

TEST_CASE("totally unimodular implies unimodular on full-row-rank matrices") {
  std::mt19937_64 rng(20240831);
  int covered = 0;
  for (int trial = 0; trial < 40; ++trial) {
    // A full incidence matrix never has full row rank (rows sum to zero);
    // dropping one node row leaves a TU matrix of full rank when the random
    // digraph happens to be connected.
    const IntMatrix full = random_digraph_incidence(rng, 4, 6);
    const IntMatrix m = full.select_rows({0, 1, 2});
    if (satfrac::rank(m) != m.rows()) continue;
    if (!oracle::tu_by_minors(m)) continue;
    ++covered;
    const UnimodularityReport report = satfrac::is_unimodular(m);
    REQUIRE(report.unimodular == Tri::kTrue);
    REQUIRE(report.minor_magnitude.has_value());
    CHECK(*report.minor_magnitude == 1);
  }
  CHECK(covered > 5);
}

TEST_CASE("unimodular verdicts agree with a direct scan of the maximal minors") {
  std::mt19937_64 rng(20240832);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 2);
    const int cols = rows + 1 + static_cast<int>(rng() % 3);
    const IntMatrix m = random_pm1_matrix(rng, rows, cols);
    if (satfrac::rank(m) != rows) continue;
    // Brute-force scan of all rank-size column subsets.
    std::vector<int> idx(rows);
    for (int i = 0; i < rows; ++i) idx[i] = i;
    std::optional<Int> magnitude;
    bool all_equal = true;
    for (;;) {
      const Int d = boost::multiprecision::abs(
          satfrac::determinant(m.select_columns(idx)));
      if (d != 0) {
        if (!magnitude) {
          magnitude = d;
        } else if (*magnitude != d) {
          all_equal = false;
        }
      }
      int i = rows - 1;
      while (i >= 0 && idx[i] == cols - rows + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < rows; ++j) idx[j] = idx[j - 1] + 1;
    }
    const UnimodularityReport report = satfrac::is_unimodular(m);
    REQUIRE(report.unimodular != Tri::kUnknown);
    CHECK((report.unimodular == Tri::kTrue) == all_equal);
    if (all_equal) {
      REQUIRE(report.minor_magnitude.has_value());
      CHECK(*report.minor_magnitude == *magnitude);
    } else {
      // The two witness minors must really have different nonzero magnitudes.
      REQUIRE(report.reference_minor.has_value());
      REQUIRE(report.violating_minor.has_value());
      const Int ref = satfrac::determinant(
          m.select_rows(report.reference_minor->rows)
              .select_columns(report.reference_minor->cols));
      const Int bad = satfrac::determinant(
          m.select_rows(report.violating_minor->rows)
              .select_columns(report.violating_minor->cols));
      CHECK(ref == report.reference_minor->value);
      CHECK(bad == report.violating_minor->value);
      CHECK(boost::multiprecision::abs(ref) != boost::multiprecision::abs(bad));
      CHECK(ref != 0);
      CHECK(bad != 0);
    }
  }
}

TEST_CASE("lawrence_lifting builds [[A,0],[I,I]] and preserves total unimodularity") {
  std::mt19937_64 rng(20240833);
  for (int trial = 0; trial < 25; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 2);
    const int cols = 3 + static_cast<int>(rng() % 2);
    const IntMatrix a = trial % 2 == 0 ? random_digraph_incidence(rng, rows + 1, cols)
                                       : random_interval_matrix(rng, rows, cols);
    const IntMatrix lifted = satfrac::lawrence_lifting(a);
    REQUIRE(lifted.rows() == a.rows() + cols);
    REQUIRE(lifted.cols() == 2 * cols);
    for (int r = 0; r < a.rows(); ++r) {
      for (int c = 0; c < cols; ++c) {
        CHECK(lifted.at(r, c) == a.at(r, c));
        CHECK(lifted.at(r, cols + c) == 0);
      }
    }
    for (int r = 0; r < cols; ++r) {
      for (int c = 0; c < cols; ++c) {
        const Int expected = r == c ? 1 : 0;
        CHECK(lifted.at(a.rows() + r, c) == expected);
        CHECK(lifted.at(a.rows() + r, cols + c) == expected);
      }
    }
    // Preservation, both by the oracle and by the decision procedure.
    const bool tu_a = oracle::tu_by_minors(a);
    if (tu_a) CHECK(oracle::tu_by_minors(lifted));
    const UnimodularityReport lifted_report = satfrac::is_totally_unimodular(lifted);
    REQUIRE(lifted_report.totally_unimodular != Tri::kUnknown);
    CHECK((lifted_report.totally_unimodular == Tri::kTrue) == tu_a);
  }
}

TEST_CASE("two-level interaction design matrices are not unimodular") {
  const FactorialDesign d({2, 2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const UnimodularityReport report = satfrac::is_unimodular(a);
  CHECK(report.unimodular == Tri::kFalse);
  const UnimodularityReport tu = satfrac::is_totally_unimodular(a);
  CHECK(tu.totally_unimodular == Tri::kFalse);
}

TEST_CASE("a single-factor main-effects matrix is totally unimodular") {
  // Its columns are the all-ones vector plus unit vectors, so every square
  // submatrix expands along unit columns to a 0/+-1 determinant.
  const FactorialDesign d({4});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 1));
  CHECK(oracle::tu_by_minors(a));
  const UnimodularityReport report = satfrac::is_totally_unimodular(a);
  CHECK(report.totally_unimodular == Tri::kTrue);
  const UnimodularityReport uni = satfrac::is_unimodular(a);
  CHECK(uni.unimodular == Tri::kTrue);
  REQUIRE(uni.minor_magnitude.has_value());
  CHECK(*uni.minor_magnitude == 1);
}

TEST_CASE("main effects of three two-level factors already break total unimodularity") {
  // Rows {intercept, a0, b0, c0} against columns {000, 011, 101, 110} give a
  // determinant of -2, so even the order-1 matrix is not totally unimodular.
  const FactorialDesign d({2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 1));
  const IntMatrix witness = a.select_columns(
      {static_cast<int>(d.point_index({0, 0, 0})), static_cast<int>(d.point_index({0, 1, 1})),
       static_cast<int>(d.point_index({1, 0, 1})), static_cast<int>(d.point_index({1, 1, 0}))});
  CHECK(boost::multiprecision::abs(satfrac::determinant(witness)) == 2);
  CHECK_FALSE(oracle::tu_by_minors(a));
  CHECK(satfrac::is_totally_unimodular(a).totally_unimodular == Tri::kFalse);
}