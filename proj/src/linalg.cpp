#include "gkz/linalg.hpp"

#include <numeric>
#include <set>

#include "gkz/errors.hpp"

namespace gkz {

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_.size() || c >= cols_) throw Error(ErrorCode::InvalidArgument, "matrix index out of range");
  if (v == 0) return;
  auto& e = rows_[r][c];
  e += v;
  if (e == 0) rows_[r].erase(c);
}

std::size_t SparseMatrix::append_row(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= cols_) throw Error(ErrorCode::InvalidArgument, "matrix column out of range");
    it = it->second == 0 ? row.erase(it) : std::next(it);
  }
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols_ != other.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
  SparseMatrix out(rows_.size(), other.cols());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [k, v] : rows_[r])
      for (const auto& [c, w] : other.row(k)) out.add(r, c, v * w);
  return out;
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

std::size_t rank(const SparseMatrix& m, const std::vector<std::size_t>& column_order) {
  std::vector<SparseMatrix::Row> rows;
  rows.reserve(m.rows());
  std::vector<std::set<std::size_t>> in_col(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(m.row(r));
    for (const auto& [c, v] : rows.back()) in_col[c].insert(r);
  }
  std::vector<std::size_t> order = column_order;
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<char> done(m.cols(), 0);
  std::size_t rk = 0;
  auto eliminate_column = [&](std::size_t col) {
    if (done[col]) return;
    done[col] = 1;
    if (in_col[col].empty()) return;
    std::size_t pivot = *in_col[col].begin();
    for (std::size_t r : in_col[col])
      if (rows[r].size() < rows[pivot].size()) pivot = r;
    SparseMatrix::Row prow = std::move(rows[pivot]);
    rows[pivot].clear();
    for (const auto& [c, v] : prow) in_col[c].erase(pivot);
    const Rational pv = prow.at(col);
    std::vector<std::size_t> targets(in_col[col].begin(), in_col[col].end());
    for (std::size_t r : targets) {
      Rational factor = rows[r].at(col) / pv;
      for (const auto& [c, v] : prow) {
        auto it = rows[r].find(c);
        if (it == rows[r].end()) {
          rows[r].emplace(c, -factor * v);
          in_col[c].insert(r);
        } else {
          it->second -= factor * v;
          if (it->second == 0) {
            rows[r].erase(it);
            in_col[c].erase(r);
          }
        }
      }
    }
    ++rk;
  };
  for (std::size_t c : order) eliminate_column(c);
  for (std::size_t c = 0; c < m.cols(); ++c) eliminate_column(c);
  return rk;
}

std::optional<std::vector<Rational>> solve_particular(const SparseMatrix& m,
                                                      const std::vector<Rational>& rhs) {
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  if (rhs.size() != R) throw Error(ErrorCode::InvalidArgument, "right-hand side has wrong length");
  std::vector<std::vector<Rational>> a(R, std::vector<Rational>(C + 1, Rational(0)));
  for (std::size_t r = 0; r < R; ++r) {
    for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    a[r][C] = rhs[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t p = row;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[row][c];
      for (std::size_t k = c; k <= C; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < R; ++r)
    if (a[r][C] != 0) return std::nullopt;
  std::vector<Rational> x(C, Rational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = a[r][C] / a[r][pivot_col[r]];
  return x;
}

}  // namespace gkz
