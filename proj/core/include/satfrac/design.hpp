#pragma once

#include <cstdint>
#include <vector>

#include "satfrac/intmat.hpp"

namespace satfrac {

// Full factorial design with d factors, factor k taking levels
// 0 .. levels[k]-1.  Design points are indexed lexicographically with the
// LAST factor varying fastest:
//   index(t) = sum_k t[k] * prod_{l>k} levels[l].
class FactorialDesign {
 public:
  explicit FactorialDesign(std::vector<int> levels);

  int factor_count() const { return static_cast<int>(levels_.size()); }
  const std::vector<int>& levels() const { return levels_; }
  std::int64_t size() const { return size_; }  // number of design points

  std::int64_t point_index(const std::vector<int>& tuple) const;
  std::vector<int> point_tuple(std::int64_t index) const;

  bool operator==(const FactorialDesign& other) const = default;

 private:
  std::vector<int> levels_;
  std::int64_t size_ = 1;
};

// A linear model on a factorial design, given as a list of interaction
// terms.  Each term is a sorted list of distinct factor indices; the empty
// term is the intercept.  Terms must be distinct.
class ModelSpec {
 public:
  ModelSpec(const FactorialDesign& design, std::vector<std::vector<int>> terms);

  const std::vector<std::vector<int>>& terms() const { return terms_; }

  // Number of model-matrix columns this spec produces on `design`:
  // each term {k1,...,kr} contributes prod (levels[ki] - 1) columns.
  int column_count(const FactorialDesign& design) const;

 private:
  std::vector<std::vector<int>> terms_;
};

// Intercept plus all interactions of order 1 .. max_order, listed by
// ascending term size then lexicographically.
ModelSpec model_with_interactions(const FactorialDesign& design, int max_order);

// Dummy-coded model matrix X, one row per design point in index order.
// Factor k is coded with indicator columns for levels 0 .. levels[k]-2 (the
// last level is dropped); a term's columns are entrywise products of the
// retained indicators, ordered lexicographically by level tuple.  All
// entries are 0 or 1.
IntMatrix build_model_matrix(const FactorialDesign& design, const ModelSpec& model);

// The design matrix A = X^T used throughout: p rows (model columns) and
// design.size() columns (design points).
IntMatrix design_matrix(const FactorialDesign& design, const ModelSpec& model);

// A subset of design points, kept sorted and duplicate-free.
class Fraction {
 public:
  Fraction(FactorialDesign design, std::vector<std::int64_t> points);

  const FactorialDesign& design() const { return design_; }
  const std::vector<std::int64_t>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }

  bool operator==(const Fraction& other) const = default;

 private:
  FactorialDesign design_;
  std::vector<std::int64_t> points_;
};

// 0/1 indicator table of a fraction, indexed by design point (so the flat
// layout follows the design's point indexing).
std::vector<int> fraction_to_table(const Fraction& fraction);

// Inverse of fraction_to_table; entries must all be 0 or 1.
Fraction table_to_fraction(const FactorialDesign& design, const std::vector<int>& table);

}  // namespace satfrac
