#pragma once

#include <array>
#include <map>
#include <string>

#include "gkz/rational.hpp"
#include "gkz/series.hpp"

namespace gkz {

/// Normal-ordered monomial x1^x[0] x2^x[1] d1^d[0] d2^d[1].
struct OpMonomial {
  std::array<std::int64_t, 2> x{0, 0};
  std::array<std::int64_t, 2> d{0, 0};

  friend auto operator<=>(const OpMonomial&, const OpMonomial&) = default;
};

/// Element of the second Weyl algebra, stored normal-ordered (all x's left of
/// all d's). Equality is therefore syntactic.
class DiffOperator {
 public:
  using Terms = std::map<OpMonomial, Rational>;

  DiffOperator() = default;
  explicit DiffOperator(Terms terms);

  static DiffOperator identity();
  static DiffOperator scalar(const Rational& c);
  static DiffOperator monomial(const Rational& c, std::array<std::int64_t, 2> x,
                               std::array<std::int64_t, 2> d);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal d-degree per variable over all monomials.
  std::array<std::int64_t, 2> max_d_degree() const;

  DiffOperator operator+(const DiffOperator& o) const;
  DiffOperator operator-(const DiffOperator& o) const;
  DiffOperator operator-() const;
  friend DiffOperator operator*(const Rational& c, const DiffOperator& D);

  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

 private:
  Terms terms_;
};

struct HypergeometricOps {
  DiffOperator P;
  DiffOperator E;
};

/// Validates 0 < a < b with gcd(a, b) = 1; throws BadMatrix otherwise.
void check_matrix(std::int64_t a, std::int64_t b);

/// P = d1^b - d2^a and E = a x1 d1 + b x2 d2 - beta.
HypergeometricOps hypergeometric_ops(std::int64_t a, std::int64_t b, const Rational& beta);

/// E written in the local coordinates (t1, x2) with x1 = t1 + eps:
/// a t1 d1 + b x2 d2 + a eps d1 - beta.
DiffOperator euler_at_point(std::int64_t a, std::int64_t b, const Rational& beta,
                            const Rational& eps);

/// Exact image D(f). The result keeps only coefficients that f's truncation
/// fully determines.
SparseSeries apply(const DiffOperator& D, const SparseSeries& f);

/// Normal-ordered product D1 o D2.
DiffOperator compose(const DiffOperator& D1, const DiffOperator& D2);

/// Weight vector on (d1, d2); x_i carries weight -w_i.
struct WeightVector {
  Rational w1;
  Rational w2;
};

/// Sum of the monomials of D of maximal weight.
DiffOperator initial_form(const DiffOperator& D, const WeightVector& w);

/// Rendering in the CLI grammar, e.g. "2*x1*d1 + 3*x2*d2 - 1/2".
std::string to_string(const DiffOperator& D);

}  // namespace gkz
