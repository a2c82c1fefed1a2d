#include "satfrac/design.hpp"

#include <algorithm>
#include <stdexcept>

namespace satfrac {

namespace {

constexpr std::int64_t kMaxDesignSize = std::int64_t(1) << 40;

}  // namespace

FactorialDesign::FactorialDesign(std::vector<int> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) {
    throw std::invalid_argument("FactorialDesign: need at least one factor");
  }
  for (int s : levels_) {
    if (s < 2) {
      throw std::invalid_argument("FactorialDesign: every factor needs >= 2 levels");
    }
    size_ *= s;
    if (size_ > kMaxDesignSize) {
      throw std::invalid_argument("FactorialDesign: design too large");
    }
  }
}

std::int64_t FactorialDesign::point_index(const std::vector<int>& tuple) const {
  if (tuple.size() != levels_.size()) {
    throw std::invalid_argument("point_index: tuple arity does not match factor count");
  }
  std::int64_t idx = 0;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (tuple[k] < 0 || tuple[k] >= levels_[k]) {
      throw std::invalid_argument("point_index: level out of range");
    }
    idx = idx * levels_[k] + tuple[k];
  }
  return idx;
}

std::vector<int> FactorialDesign::point_tuple(std::int64_t index) const {
  if (index < 0 || index >= size_) {
    throw std::invalid_argument("point_tuple: index out of range");
  }
  std::vector<int> tuple(levels_.size());
  for (int k = factor_count() - 1; k >= 0; --k) {
    tuple[k] = static_cast<int>(index % levels_[k]);
    index /= levels_[k];
  }
  return tuple;
}

ModelSpec::ModelSpec(const FactorialDesign& design, std::vector<std::vector<int>> terms)
    : terms_(std::move(terms)) {
  const int d = design.factor_count();
  for (const auto& term : terms_) {
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] < 0 || term[i] >= d) {
        throw std::invalid_argument("ModelSpec: factor index out of range");
      }
      if (i > 0 && term[i] <= term[i - 1]) {
        throw std::invalid_argument("ModelSpec: term factors must be strictly increasing");
      }
    }
  }
  auto sorted = terms_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("ModelSpec: duplicate term");
  }
}

int ModelSpec::column_count(const FactorialDesign& design) const {
  int p = 0;
  for (const auto& term : terms_) {
    int block = 1;
    for (int k : term) block *= design.levels()[k] - 1;
    p += block;
  }
  return p;
}

ModelSpec model_with_interactions(const FactorialDesign& design, int max_order) {
  const int d = design.factor_count();
  if (max_order < 1 || max_order > d) {
    throw std::invalid_argument("model_with_interactions: order must be in [1, factor count]");
  }
  std::vector<std::vector<int>> terms;
  terms.push_back({});  // intercept
  // All factor subsets of each size, in lexicographic order.
  std::vector<int> pick;
  auto emit = [&](auto&& self, int next, int remaining) -> void {
    if (remaining == 0) {
      terms.push_back(pick);
      return;
    }
    for (int k = next; k <= d - remaining; ++k) {
      pick.push_back(k);
      self(self, k + 1, remaining - 1);
      pick.pop_back();
    }
  };
  for (int size = 1; size <= max_order; ++size) emit(emit, 0, size);
  return ModelSpec(design, std::move(terms));
}

IntMatrix build_model_matrix(const FactorialDesign& design, const ModelSpec& model) {
  const std::int64_t n = design.size();
  const int p = model.column_count(design);
  IntMatrix x(static_cast<int>(n), p);

  int col = 0;
  for (const auto& term : model.terms()) {
    // Iterate the term's retained-level tuples lexicographically; each tuple
    // yields one column of indicator products.
    std::vector<int> tuple(term.size(), 0);
    for (;;) {
      for (std::int64_t i = 0; i < n; ++i) {
        const std::vector<int> point = design.point_tuple(i);
        int val = 1;
        for (std::size_t j = 0; j < term.size(); ++j) {
          if (point[term[j]] != tuple[j]) {
            val = 0;
            break;
          }
        }
        x.at(static_cast<int>(i), col) = val;
      }
      ++col;
      // Next tuple, last position fastest, each position ranging over the
      // retained levels 0 .. levels[k]-2.
      int j = static_cast<int>(term.size()) - 1;
      while (j >= 0 && tuple[j] == design.levels()[term[j]] - 2) {
        tuple[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++tuple[j];
    }
  }
  return x;
}

IntMatrix design_matrix(const FactorialDesign& design, const ModelSpec& model) {
  return build_model_matrix(design, model).transposed();
}

Fraction::Fraction(FactorialDesign design, std::vector<std::int64_t> points)
    : design_(std::move(design)), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw std::invalid_argument("Fraction: duplicate design point");
  }
  for (std::int64_t p : points_) {
    if (p < 0 || p >= design_.size()) {
      throw std::invalid_argument("Fraction: design point out of range");
    }
  }
}

std::vector<int> fraction_to_table(const Fraction& fraction) {
  std::vector<int> table(static_cast<std::size_t>(fraction.design().size()), 0);
  for (std::int64_t p : fraction.points()) table[static_cast<std::size_t>(p)] = 1;
  return table;
}

Fraction table_to_fraction(const FactorialDesign& design, const std::vector<int>& table) {
  if (table.size() != static_cast<std::size_t>(design.size())) {
    throw std::invalid_argument("table_to_fraction: table size does not match design");
  }
  std::vector<std::int64_t> points;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == 1) {
      points.push_back(static_cast<std::int64_t>(i));
    } else if (table[i] != 0) {
      throw std::invalid_argument("table_to_fraction: entries must be 0 or 1");
    }
  }
  return Fraction(design, std::move(points));
}

}  // namespace satfrac
