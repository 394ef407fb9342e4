#include "gkz/solvers.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "gkz/errors.hpp"
#include "gkz/linalg.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

BasePoint::BasePoint(Rational epsilon) : epsilon_(std::move(epsilon)) {
  if (epsilon_ == 0) throw Error(ErrorCode::ConstraintError, "base point epsilon must be nonzero");
}

Rational class_exponent(std::int64_t k, std::int64_t a, std::int64_t b, const Rational& beta) {
  return (beta - k * b) / a;
}

SparseSeries to_series(const ResidueClassSeries& c, std::int64_t a, std::int64_t b) {
  SparseSeries::Terms terms;
  for (std::size_t m = 0; m < c.coeffs.size(); ++m) {
    if (c.coeffs[m] == 0) continue;
    auto mm = static_cast<long>(m);
    terms.emplace(ExponentPair{Rational(c.gamma - b * mm), Rational(c.k + a * mm)}, c.coeffs[m]);
  }
  RayTrunc ray{static_cast<std::int64_t>(c.coeffs.size()) - 1,
               ExponentPair{c.gamma, Rational(c.k)}, {-b, a}, 0};
  return SparseSeries(std::move(terms), ray);
}

std::vector<ResidueClassSeries> split_classes(const SparseSeries& f, std::int64_t a,
                                              std::int64_t b, const Rational& beta,
                                              const Rational& shift, std::int64_t M) {
  std::vector<ResidueClassSeries> out(static_cast<std::size_t>(a));
  for (std::int64_t k = 0; k < a; ++k) {
    out[k].k = k;
    out[k].gamma = class_exponent(k, a, b, beta) + shift;
    out[k].coeffs.assign(static_cast<std::size_t>(M + 1), Rational(0));
  }
  for (const auto& [e, c] : f.terms()) {
    if (!is_natural(e.e2))
      throw Error(ErrorCode::InvalidArgument, "x2-exponent must be natural: " + to_string(e));
    std::int64_t n = to_int64(e.e2);
    std::int64_t k = n % a;
    std::int64_t m = n / a;
    if (e.e1 != out[k].gamma - b * m)
      throw Error(ErrorCode::InvalidArgument, "term " + to_string(e) + " is off its residue ray");
    if (m <= M) out[k].coeffs[static_cast<std::size_t>(m)] = c;
  }
  return out;
}

namespace {

Rational weight(const ExponentPair& e, std::int64_t a, std::int64_t b) {
  return a * e.e1 + b * e.e2;
}

void require_natural(const SparseSeries& f) {
  for (const auto& [e, c] : f.terms())
    if (!is_natural(e.e1) || !is_natural(e.e2))
      throw Error(ErrorCode::NonNaturalExponent, "exponent " + to_string(e));
}

}  // namespace

std::pair<SparseSeries, SparseSeries> decompose_VW(const SparseSeries& f, std::int64_t a,
                                                   std::int64_t b, const Rational& beta) {
  check_matrix(a, b);
  require_natural(f);
  SparseSeries::Terms v;
  SparseSeries::Terms w;
  for (const auto& [e, c] : f.terms()) (weight(e, a, b) == beta ? w : v).emplace(e, c);
  return {SparseSeries(std::move(v), f.trunc()), SparseSeries(std::move(w), f.trunc())};
}

SparseSeries invert_E_origin(const SparseSeries& g, std::int64_t a, std::int64_t b,
                             const Rational& beta) {
  check_matrix(a, b);
  require_natural(g);
  SparseSeries::Terms out;
  for (const auto& [e, c] : g.terms()) {
    Rational d = weight(e, a, b) - beta;
    if (d == 0)
      throw Error(ErrorCode::ResonantTerm, "term " + to_string(e) + " has A alpha = beta");
    out.emplace(e, c / d);
  }
  return SparseSeries(std::move(out), g.trunc());
}

std::vector<ExponentPair> weight_stratum(std::int64_t a, std::int64_t b, const Rational& value) {
  std::vector<ExponentPair> out;
  if (!is_natural(value)) return out;
  std::int64_t v = to_int64(value);
  for (std::int64_t i = 0; a * i <= v; ++i)
    if ((v - a * i) % b == 0) out.push_back({Rational(i), Rational((v - a * i) / b)});
  return out;
}

SparseSeries surject_P_on_W(const SparseSeries& h2, std::int64_t a, std::int64_t b,
                            const Rational& beta) {
  check_matrix(a, b);
  require_natural(h2);
  const Rational target = beta - a * b;
  for (const auto& [e, c] : h2.terms())
    if (weight(e, a, b) != target)
      throw Error(ErrorCode::NotInTargetStratum,
                  "term " + to_string(e) + " is not on A alpha = beta - ab");

  auto domain = weight_stratum(a, b, beta);
  auto codomain = weight_stratum(a, b, target);
  if (codomain.empty() || h2.is_zero()) return SparseSeries(ExactTrunc{});

  // P(x^alpha) = (alpha_1)_b x^{alpha - (b,0)} - (alpha_2)_a x^{alpha - (0,a)}.
  std::map<ExponentPair, std::size_t> row_of;
  for (std::size_t r = 0; r < codomain.size(); ++r) row_of[codomain[r]] = r;
  SparseMatrix P(codomain.size(), domain.size());
  for (std::size_t c = 0; c < domain.size(); ++c) {
    const auto& al = domain[c];
    Rational d1 = falling(al.e1, b);
    Rational d2 = falling(al.e2, a);
    if (d1 != 0) P.add(row_of.at({Rational(al.e1 - b), al.e2}), c, d1);
    if (d2 != 0) P.add(row_of.at({al.e1, Rational(al.e2 - a)}), c, Rational(-d2));
  }
  std::vector<Rational> rhs(codomain.size(), Rational(0));
  for (const auto& [e, c] : h2.terms()) rhs[row_of.at(e)] = c;
  auto sol = solve_particular(P, rhs);
  if (!sol) throw Error(ErrorCode::NotInTargetStratum, "P has no preimage on the beta stratum");
  SparseSeries::Terms out;
  for (std::size_t c = 0; c < domain.size(); ++c) out.emplace(domain[c], (*sol)[c]);
  return SparseSeries(std::move(out), ExactTrunc{});
}

SparseSeries to_local_coordinates(const SparseSeries& f, const BasePoint& p, const BoxTrunc& box) {
  const Rational& eps = p.epsilon();
  SparseSeries::Terms out;
  for (const auto& [e, c] : f.terms()) {
    if (!is_natural(e.e2))
      throw Error(ErrorCode::NonNaturalExponent, "x2-exponent " + to_string(e.e2));
    if (!is_integer(e.e1) && eps != 1)
      throw Error(ErrorCode::NonNaturalExponent,
                  "fractional x1-exponent needs eps = 1: " + to_string(e.e1));
    if (e.e2 > box.N2) continue;
    // (t + eps)^g = sum_i C(g, i) eps^{g-i} t^i.
    Rational binom = 1;
    for (std::int64_t i = 0; i <= box.N1; ++i) {
      if (binom == 0) break;
      Rational eps_pow = 1;
      if (eps != 1) {
        long power = to_int64(e.e1) - i;
        Rational base = power >= 0 ? eps : Rational(1 / eps);
        for (long j = 0; j < std::labs(power); ++j) eps_pow *= base;
      }
      out[{Rational(i), e.e2}] += c * binom * eps_pow;
      binom = binom * (e.e1 - i) / (i + 1);
    }
  }
  return SparseSeries(std::move(out), box);
}

SparseSeries solve_Ep_local(const SparseSeries& g, const BasePoint& p, std::int64_t a,
                            std::int64_t b, const Rational& beta, const BoxTrunc& box,
                            std::span<const Rational> column_seeds) {
  check_matrix(a, b);
  require_natural(g);
  BoxTrunc read = box;
  if (const auto* gb = std::get_if<BoxTrunc>(&g.trunc()))
    read = BoxTrunc{std::min(box.N1, gb->N1), std::min(box.N2, gb->N2)};
  const Rational step = a * p.epsilon();

  SparseSeries::Terms out;
  for (std::int64_t j = 0; j <= read.N2; ++j) {
    Rational h = static_cast<std::size_t>(j) < column_seeds.size() ? column_seeds[j] : Rational(0);
    if (h != 0) out.emplace(ExponentPair{Rational(0), Rational(j)}, h);
    for (std::int64_t i = 0; i <= read.N1; ++i) {
      Rational gij = coeff_at(g, {Rational(i), Rational(j)});
      h = (gij - (a * i + b * j - beta) * h) / (step * (i + 1));
      if (h != 0) out.emplace(ExponentPair{Rational(i + 1), Rational(j)}, h);
    }
  }
  return SparseSeries(std::move(out), BoxTrunc{read.N1 + 1, read.N2});
}

std::vector<ResidueClassSeries> solve_P_recurrence(const std::vector<ResidueClassSeries>& f,
                                                   std::int64_t a, std::int64_t b,
                                                   const Rational& beta, const BasePoint& p,
                                                   std::int64_t M,
                                                   std::span<const Rational> seeds) {
  check_matrix(a, b);
  (void)p;  // the recurrence in the x1-basis does not depend on eps
  std::vector<ResidueClassSeries> out;
  for (std::int64_t k = 0; k < a; ++k) {
    const ResidueClassSeries* fk = nullptr;
    for (const auto& c : f)
      if (c.k == k) fk = &c;
    ResidueClassSeries h;
    h.k = k;
    h.gamma = class_exponent(k, a, b, beta);
    if (fk != nullptr && fk->gamma != h.gamma - b)
      throw Error(ErrorCode::InvalidArgument, "class " + std::to_string(k) +
                                                  " of f must start at x1^{gamma_k - b}");
    h.coeffs.reserve(static_cast<std::size_t>(M + 1));
    h.coeffs.push_back(static_cast<std::size_t>(k) < seeds.size() ? seeds[k] : Rational(0));
    for (std::int64_t m = 0; m < M; ++m) {
      Rational fm = (fk != nullptr && static_cast<std::size_t>(m) < fk->coeffs.size())
                        ? fk->coeffs[m]
                        : Rational(0);
      Rational num = falling(h.gamma - b * m, b) * h.coeffs.back() - fm;
      h.coeffs.push_back(num / falling(Rational(k + a * (m + 1)), a));
    }
    out.push_back(std::move(h));
  }
  return out;
}

ResidueClassSeries explicit_recurrence_solution(const ResidueClassSeries& f, std::int64_t a,
                                                std::int64_t b, const Rational& beta,
                                                std::int64_t M) {
  check_matrix(a, b);
  const std::int64_t k = f.k;
  const Rational gamma = class_exponent(k, a, b, beta);
  ResidueClassSeries h{k, gamma, {Rational(0)}};
  Rational sum = 0;
  for (std::int64_t m = 0; m < M; ++m) {
    Rational fm = static_cast<std::size_t>(m) < f.coeffs.size() ? f.coeffs[m] : Rational(0);
    if (fm != 0) {
      Rational den = falling(gamma, b * (m + 1));
      if (den == 0)
        throw Error(ErrorCode::ResonantClass, "(gamma)_{b(r+1)} vanishes in class " +
                                                  std::to_string(k));
      sum += Rational(factorial(k + a * m)) * fm / den;
    }
    h.coeffs.push_back(-falling(gamma, b * (m + 1)) / Rational(factorial(k + a * (m + 1))) * sum);
  }
  return h;
}

namespace {

// Shared tail of both lambda variants: lambda = start_value - sum_{r >= start}
// f_r / ((gamma - b r)_b G_r), with G the homogeneous chain from G_start = 1.
LambdaResult chain_lambda(const ResidueClassSeries& f, std::int64_t k, std::int64_t a,
                          std::int64_t b, const Rational& gamma, std::int64_t start,
                          const Rational& start_value, std::int64_t r_max) {
  LambdaResult res;
  res.k = k;
  std::int64_t last_nonzero = -1;
  for (std::size_t r = 0; r < f.coeffs.size(); ++r)
    if (f.coeffs[r] != 0) last_nonzero = static_cast<std::int64_t>(r);

  Rational sum = start_value;
  Rational G = 1;
  Rational prev_term = 0;
  Rational term = 0;
  std::int64_t stop = std::min<std::int64_t>(r_max, static_cast<std::int64_t>(f.coeffs.size()) - 1);
  for (std::int64_t r = start; r <= stop; ++r) {
    Rational step = falling(Rational(gamma - b * r), b);
    if (step == 0)
      throw Error(ErrorCode::ResonantClass, "chain breaks at m = " + std::to_string(r));
    prev_term = term;
    term = f.coeffs[r] / (step * G);
    sum -= term;
    res.partial_sum_terms++;
    G = G * step / falling(Rational(k + a * (r + 1)), a);
  }
  res.lambda = sum.get_d();
  if (last_nonzero <= stop) {
    res.tail_bound = 0.0;
    res.exact = sum;
  } else if (prev_term == 0 || term == 0) {
    res.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    double rho = std::exp(log_abs(term) - log_abs(prev_term));
    res.tail_bound = rho < 1.0 ? std::exp(log_abs(term)) * rho / (1.0 - rho)
                               : std::numeric_limits<double>::infinity();
  }
  return res;
}

void require_below_slope(std::int64_t a, std::int64_t b, const Rational& s) {
  if (a * s >= b)
    throw Error(ErrorCode::NonGevreyInput, "lambda extraction needs a s < b, got s = " + to_string(s));
}

}  // namespace

LambdaResult extract_lambda(const ResidueClassSeries& f, std::int64_t k, std::int64_t a,
                            std::int64_t b, const Rational& beta, const Rational& s,
                            std::int64_t r_max) {
  check_matrix(a, b);
  require_below_slope(a, b, s);
  const Rational gamma = class_exponent(k, a, b, beta);
  if (is_natural(gamma))
    throw Error(ErrorCode::ResonantClass,
                "class " + std::to_string(k) + " is resonant; use extract_lambda_resonant");
  return chain_lambda(f, k, a, b, gamma, 0, Rational(0), r_max);
}

LambdaResult extract_lambda_resonant(const ResidueClassSeries& f, const ResonanceData& rd,
                                     std::int64_t a, std::int64_t b, const Rational& beta,
                                     const Rational& s, std::int64_t r_max) {
  check_matrix(a, b);
  require_below_slope(a, b, s);
  const Rational gamma = class_exponent(rd.q, a, b, beta);
  const std::int64_t mstar = rd.m0 / b;
  Rational f_star = static_cast<std::size_t>(mstar) < f.coeffs.size() ? f.coeffs[mstar] : Rational(0);
  Rational h_start = -f_star / falling(Rational(rd.q + a * rd.mprime), a);
  LambdaResult res = chain_lambda(f, rd.q, a, b, gamma, rd.mprime, h_start, r_max);
  res.k = rd.q;
  return res;
}

ResidueClassSeries solve_resonant_class(const ResidueClassSeries& f, const ResonanceData& rd,
                                        std::int64_t a, std::int64_t b, const Rational& beta,
                                        std::int64_t M) {
  check_matrix(a, b);
  const std::int64_t mstar = rd.m0 / b;
  ResidueClassSeries h{rd.q, class_exponent(rd.q, a, b, beta), {}};
  h.coeffs.assign(static_cast<std::size_t>(std::min(mstar, M) + 1), Rational(0));
  for (std::int64_t m = mstar; m < M; ++m) {
    Rational fm = static_cast<std::size_t>(m) < f.coeffs.size() ? f.coeffs[m] : Rational(0);
    Rational num = falling(h.gamma - b * m, b) * h.coeffs.back() - fm;
    h.coeffs.push_back(num / falling(Rational(rd.q + a * (m + 1)), a));
  }
  return h;
}

}  // namespace gkz
