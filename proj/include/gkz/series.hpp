#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkz/rational.hpp"

namespace gkz {

/// Exponent of x1^e1 x2^e2. Negative and fractional values are allowed.
struct ExponentPair {
  Rational e1;
  Rational e2;

  friend bool operator==(const ExponentPair& l, const ExponentPair& r) {
    return l.e1 == r.e1 && l.e2 == r.e2;
  }
  friend bool operator<(const ExponentPair& l, const ExponentPair& r) {
    int c = cmp(l.e1, r.e1);
    return c != 0 ? c < 0 : l.e2 < r.e2;
  }
};

ExponentPair operator+(const ExponentPair& l, const ExponentPair& r);
ExponentPair operator-(const ExponentPair& l, const ExponentPair& r);
ExponentPair operator*(const Rational& s, const ExponentPair& e);

using IntPair = std::array<std::int64_t, 2>;

ExponentPair to_exponent(const IntPair& u);

/// Known region of a series: no truncation at all.
struct ExactTrunc {
  friend bool operator==(const ExactTrunc&, const ExactTrunc&) = default;
};

/// Ray truncation along u from v. The region is bounded on the coordinate in
/// which u increases: e[axis] <= v[axis] + u[axis] * M, everything else in
/// that half-plane is known. u must have components of opposite sign.
/// `offset` records a re-based start (ray index 0 here is index `offset` of
/// the family the series came from).
struct RayTrunc {
  std::int64_t M = 0;
  ExponentPair v;
  IntPair u{0, 0};
  std::int64_t offset = 0;

  int axis() const { return u[0] > 0 ? 0 : 1; }
  Rational bound() const;
  friend bool operator==(const RayTrunc& l, const RayTrunc& r) {
    return l.M == r.M && l.v == r.v && l.u == r.u && l.offset == r.offset;
  }
};

/// Box of natural exponents e1 <= N1, e2 <= N2. Negative bounds mean empty.
struct BoxTrunc {
  std::int64_t N1 = 0;
  std::int64_t N2 = 0;

  bool empty() const { return N1 < 0 || N2 < 0; }
  friend bool operator==(const BoxTrunc&, const BoxTrunc&) = default;
};

using TruncationSpec = std::variant<ExactTrunc, RayTrunc, BoxTrunc>;

bool within(const TruncationSpec& t, const ExponentPair& e);

/// Finite sparse bivariate series with rational exponents and exact
/// coefficients. Immutable once built; zero coefficients and terms outside the
/// truncation region are discarded on construction.
class SparseSeries {
 public:
  using Terms = std::map<ExponentPair, Rational>;

  SparseSeries() = default;
  explicit SparseSeries(TruncationSpec trunc) : trunc_(std::move(trunc)) {}
  SparseSeries(Terms terms, TruncationSpec trunc);

  static SparseSeries monomial(const Rational& c, const ExponentPair& e,
                               TruncationSpec trunc = ExactTrunc{});

  const Terms& terms() const { return terms_; }
  const TruncationSpec& trunc() const { return trunc_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const SparseSeries& l, const SparseSeries& r) {
    return l.terms_ == r.terms_ && l.trunc_ == r.trunc_;
  }

 private:
  Terms terms_;
  TruncationSpec trunc_ = ExactTrunc{};
};

/// Coefficient-wise sum of c_i * f_i. Truncation is the intersection of the
/// inputs' truncations. Throws IncompatibleTruncation when a ray series is
/// mixed with a box series or rays have different directions.
SparseSeries linear_combine(
    const std::vector<std::pair<Rational, SparseSeries>>& pairs);

/// Intersection of two compatible truncations.
TruncationSpec intersect(const TruncationSpec& a, const TruncationSpec& b);

Rational coeff_at(const SparseSeries& f, const ExponentPair& e);
bool within_truncation(const SparseSeries& f, const ExponentPair& e);

/// Same shape as SparseSeries with double coefficients. Non-finite values are
/// rejected.
class FloatSeries {
 public:
  using Terms = std::map<ExponentPair, double>;

  FloatSeries() = default;
  FloatSeries(Terms terms, TruncationSpec trunc);

  const Terms& terms() const { return terms_; }
  const TruncationSpec& trunc() const { return trunc_; }
  double coeff_at(const ExponentPair& e) const;

 private:
  Terms terms_;
  TruncationSpec trunc_ = ExactTrunc{};
};

FloatSeries to_float(const SparseSeries& f);

nlohmann::json to_json(const TruncationSpec& t);
TruncationSpec truncation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SparseSeries& f);
SparseSeries series_from_json(const nlohmann::json& j);

std::string to_string(const ExponentPair& e);
/// Human-readable sum of terms, e.g. "x1^4 + 12*x1*x2^2".
std::string to_string(const SparseSeries& f);

}  // namespace gkz
