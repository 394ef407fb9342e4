#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gkz/rational.hpp"

namespace gkz {

/// Row-major sparse matrix with exact entries.
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Adds v to entry (r, c).
  void add(std::size_t r, std::size_t c, const Rational& v);
  std::size_t append_row(Row row);
  const Row& row(std::size_t r) const { return rows_[r]; }
  std::size_t nonzeros() const;

  /// this * other.
  SparseMatrix multiply(const SparseMatrix& other) const;
  bool is_zero() const;

 private:
  std::vector<Row> rows_;
  std::size_t cols_;
};

/// Rank by sparse elimination. Columns are eliminated in `column_order`
/// (all columns in index order when empty); each pivot is the active row
/// with the fewest entries.
std::size_t rank(const SparseMatrix& m, const std::vector<std::size_t>& column_order = {});

/// Some x with m x = rhs, or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_particular(const SparseMatrix& m,
                                                      const std::vector<Rational>& rhs);

}  // namespace gkz
