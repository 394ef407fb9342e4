#include "gkz/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>
#include <vector>

#include "gkz/errors.hpp"

namespace gkz {

DiffOperator::DiffOperator(Terms terms) {
  for (auto& [m, c] : terms)
    if (c != 0) terms_.emplace(m, std::move(c));
}

DiffOperator DiffOperator::identity() { return scalar(1); }

DiffOperator DiffOperator::scalar(const Rational& c) { return monomial(c, {0, 0}, {0, 0}); }

DiffOperator DiffOperator::monomial(const Rational& c, std::array<std::int64_t, 2> x,
                                    std::array<std::int64_t, 2> d) {
  Terms t;
  t.emplace(OpMonomial{x, d}, c);
  return DiffOperator(std::move(t));
}

std::array<std::int64_t, 2> DiffOperator::max_d_degree() const {
  std::array<std::int64_t, 2> out{0, 0};
  for (const auto& [m, c] : terms_) {
    out[0] = std::max(out[0], m.d[0]);
    out[1] = std::max(out[1], m.d[1]);
  }
  return out;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
  Terms t = terms_;
  for (const auto& [m, c] : o.terms_) t[m] += c;
  return DiffOperator(std::move(t));
}

DiffOperator DiffOperator::operator-() const { return Rational(-1) * *this; }

DiffOperator DiffOperator::operator-(const DiffOperator& o) const { return *this + (-o); }

DiffOperator operator*(const Rational& c, const DiffOperator& D) {
  DiffOperator::Terms t;
  for (const auto& [m, v] : D.terms_) t.emplace(m, c * v);
  return DiffOperator(std::move(t));
}

void check_matrix(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0)
    throw Error(ErrorCode::BadMatrix, "entries of A must be positive");
  if (a >= b) throw Error(ErrorCode::BadMatrix, "A = (a b) requires a < b");
  if (std::gcd(a, b) != 1) throw Error(ErrorCode::BadMatrix, "A = (a b) requires gcd(a, b) = 1");
}

HypergeometricOps hypergeometric_ops(std::int64_t a, std::int64_t b, const Rational& beta) {
  check_matrix(a, b);
  DiffOperator P = DiffOperator::monomial(1, {0, 0}, {b, 0}) -
                   DiffOperator::monomial(1, {0, 0}, {0, a});
  DiffOperator E = DiffOperator::monomial(a, {1, 0}, {1, 0}) +
                   DiffOperator::monomial(b, {0, 1}, {0, 1}) - DiffOperator::scalar(beta);
  return {std::move(P), std::move(E)};
}

DiffOperator euler_at_point(std::int64_t a, std::int64_t b, const Rational& beta,
                            const Rational& eps) {
  return DiffOperator::monomial(a, {1, 0}, {1, 0}) + DiffOperator::monomial(b, {0, 1}, {0, 1}) +
         DiffOperator::monomial(Rational(a * eps), {0, 0}, {1, 0}) - DiffOperator::scalar(beta);
}

namespace {

TruncationSpec shifted_region(const TruncationSpec& t, const DiffOperator& D) {
  // Output coefficient at e reads the input at e + d - x for every monomial.
  std::array<std::int64_t, 2> shift{0, 0};
  bool first = true;
  for (const auto& [m, c] : D.terms()) {
    for (int i = 0; i < 2; ++i) {
      std::int64_t s = m.d[i] - m.x[i];
      shift[i] = first ? s : std::max(shift[i], s);
    }
    first = false;
  }
  if (const auto* ray = std::get_if<RayTrunc>(&t)) {
    RayTrunc out = *ray;
    int i = ray->axis();
    if (i == 0)
      out.v.e1 -= static_cast<long>(shift[0]);
    else
      out.v.e2 -= static_cast<long>(shift[1]);
    return out;
  }
  if (const auto* box = std::get_if<BoxTrunc>(&t)) return BoxTrunc{box->N1 - shift[0], box->N2 - shift[1]};
  return t;
}

}  // namespace

SparseSeries apply(const DiffOperator& D, const SparseSeries& f) {
  SparseSeries::Terms out;
  for (const auto& [e, c] : f.terms()) {
    for (const auto& [m, k] : D.terms()) {
      Rational coef = k * c * falling(e.e1, m.d[0]) * falling(e.e2, m.d[1]);
      if (coef == 0) continue;
      ExponentPair target{Rational(e.e1 + m.x[0] - m.d[0]), Rational(e.e2 + m.x[1] - m.d[1])};
      out[target] += coef;
    }
  }
  return SparseSeries(std::move(out), shifted_region(f.trunc(), D));
}

namespace {

// d^n x^k = sum_j C(n, j) k!/(k-j)! x^(k-j) d^(n-j), one variable at a time.
std::vector<std::tuple<Rational, std::int64_t, std::int64_t>> commute(std::int64_t n,
                                                                      std::int64_t k) {
  std::vector<std::tuple<Rational, std::int64_t, std::int64_t>> out;
  Integer binom = 1;
  Integer fall = 1;
  for (std::int64_t j = 0; j <= std::min(n, k); ++j) {
    out.emplace_back(Rational(binom * fall), k - j, n - j);
    binom = binom * (n - j) / (j + 1);
    fall *= k - j;
  }
  return out;
}

}  // namespace

DiffOperator compose(const DiffOperator& D1, const DiffOperator& D2) {
  DiffOperator::Terms out;
  for (const auto& [m1, c1] : D1.terms()) {
    for (const auto& [m2, c2] : D2.terms()) {
      auto v1 = commute(m1.d[0], m2.x[0]);
      auto v2 = commute(m1.d[1], m2.x[1]);
      for (const auto& [k1, x1, d1] : v1) {
        for (const auto& [k2, x2, d2] : v2) {
          OpMonomial m{{m1.x[0] + x1, m1.x[1] + x2}, {d1 + m2.d[0], d2 + m2.d[1]}};
          out[m] += c1 * c2 * k1 * k2;
        }
      }
    }
  }
  return DiffOperator(std::move(out));
}

DiffOperator initial_form(const DiffOperator& D, const WeightVector& w) {
  if (D.is_zero()) return D;
  auto weight = [&](const OpMonomial& m) {
    return Rational(w.w1 * (m.d[0] - m.x[0]) + w.w2 * (m.d[1] - m.x[1]));
  };
  Rational best = weight(D.terms().begin()->first);
  for (const auto& [m, c] : D.terms()) best = std::max(best, weight(m));
  DiffOperator::Terms out;
  for (const auto& [m, c] : D.terms())
    if (weight(m) == best) out.emplace(m, c);
  return DiffOperator(std::move(out));
}

std::string to_string(const DiffOperator& D) {
  if (D.is_zero()) return "0";
  std::vector<std::pair<OpMonomial, Rational>> terms(D.terms().begin(), D.terms().end());
  auto key = [](const OpMonomial& m) {
    return std::make_tuple(-(m.x[0] + m.x[1] + m.d[0] + m.d[1]), -m.d[0], -m.x[0], -m.d[1], -m.x[1]);
  };
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const auto& l, const auto& r) { return key(l.first) < key(r.first); });

  std::ostringstream os;
  bool first_term = true;
  for (const auto& [m, c] : terms) {
    if (first_term)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first_term = false;

    std::vector<std::string> factors;
    Rational mag = abs(c);
    bool constant = m.x == std::array<std::int64_t, 2>{0, 0} && m.d == std::array<std::int64_t, 2>{0, 0};
    if (mag != 1 || constant) factors.push_back(to_string(mag));
    auto power = [&](const char* var, std::int64_t e) {
      if (e == 0) return;
      factors.push_back(e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e));
    };
    power("x1", m.x[0]);
    power("x2", m.x[1]);
    power("d1", m.d[0]);
    power("d2", m.d[1]);
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

}  // namespace gkz
