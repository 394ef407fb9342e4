#include "gkz/gamma_series.hpp"

#include <algorithm>

#include "gkz/errors.hpp"
#include "gkz/parallel.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

Rational pochhammer(const ExponentPair& z, const IntPair& alpha) {
  Rational out = 1;
  if (alpha[0] > 0) out *= falling(z.e1, alpha[0]);
  if (alpha[1] > 0) out *= falling(z.e2, alpha[1]);
  return out;
}

Rational gamma_coeff(const ExponentPair& v, const IntPair& u) {
  IntPair neg{std::max<std::int64_t>(-u[0], 0), std::max<std::int64_t>(-u[1], 0)};
  IntPair pos{std::max<std::int64_t>(u[0], 0), std::max<std::int64_t>(u[1], 0)};
  Rational den = pochhammer(v + to_exponent(u), pos);
  if (den == 0) return 0;
  return pochhammer(v, neg) / den;
}

std::vector<ExponentPair> exponents_generic(std::int64_t a, std::int64_t b, const Rational& beta) {
  check_matrix(a, b);
  std::vector<ExponentPair> out;
  for (std::int64_t j = 0; j < b; ++j)
    out.push_back({Rational(static_cast<long>(j)), Rational((beta - j * a) / b)});
  return out;
}

std::vector<ExponentPair> exponents_along_Y(std::int64_t a, std::int64_t b, const Rational& beta) {
  check_matrix(a, b);
  std::vector<ExponentPair> out;
  for (std::int64_t k = 0; k < a; ++k)
    out.push_back({Rational((beta - k * b) / a), Rational(static_cast<long>(k))});
  return out;
}

IntPair axis_direction(std::int64_t a, std::int64_t b) { return {-b, a}; }
IntPair generic_direction(std::int64_t a, std::int64_t b) { return {b, -a}; }

std::vector<Rational> gamma_coefficients(const ExponentPair& v, const IntPair& u, std::int64_t M) {
  if ((u[0] > 0) == (u[1] > 0) || u[0] == 0 || u[1] == 0)
    throw Error(ErrorCode::InvalidArgument, "ray direction needs components of opposite sign");
  // Numerator (v_n)_{m|u_n|} grows by |u_n| factors at the bottom; the
  // denominator (v_p + m u_p)_{m u_p} = (v_p + 1)...(v_p + m u_p) grows by u_p
  // factors at the top. Once either hits zero it stays zero.
  const int n = u[0] < 0 ? 0 : 1;
  const int p = 1 - n;
  const Rational& vn = n == 0 ? v.e1 : v.e2;
  const Rational& vp = p == 0 ? v.e1 : v.e2;
  const std::int64_t step_n = -u[n];
  const std::int64_t step_p = u[p];

  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(M + 1));
  Rational value = 1;
  bool num_zero = false;
  bool den_zero = false;
  out.push_back(value);
  for (std::int64_t m = 0; m < M; ++m) {
    Rational ratio = 1;
    for (std::int64_t j = m * step_n; j < (m + 1) * step_n; ++j) {
      Rational f = vn - j;
      if (f == 0) num_zero = true;
      ratio *= f;
    }
    for (std::int64_t t = m * step_p + 1; t <= (m + 1) * step_p; ++t) {
      Rational f = vp + t;
      if (f == 0) den_zero = true;
      else ratio /= f;
    }
    if (num_zero || den_zero) {
      out.emplace_back(0);
      continue;
    }
    value *= ratio;
    out.push_back(value);
  }
  return out;
}

SparseSeries build_gamma_series(const GammaSeriesSpec& spec) {
  auto coeffs = gamma_coefficients(spec.v, spec.u, spec.M);
  const ExponentPair step = to_exponent(spec.u);
  SparseSeries::Terms terms;
  for (std::int64_t m = 0; m <= spec.M; ++m) {
    if (coeffs[m] == 0) continue;
    terms.emplace(spec.v + Rational(static_cast<long>(m)) * step, std::move(coeffs[m]));
  }
  return SparseSeries(std::move(terms), RayTrunc{spec.M, spec.v, spec.u, 0});
}

std::optional<ResonanceData> resonance_data(std::int64_t a, std::int64_t b, const Rational& beta) {
  check_matrix(a, b);
  for (std::int64_t q = 0; q < a; ++q) {
    Rational m0 = (beta - q * b) / a;
    if (!is_natural(m0)) continue;
    ResonanceData rd;
    rd.q = q;
    rd.m0 = to_int64(m0);
    rd.mprime = rd.m0 / b + 1;  // least m' with b m' >= m0 + 1
    rd.vtilde = {Rational(static_cast<long>(rd.m0 - b * rd.mprime)),
                 Rational(static_cast<long>(q + a * rd.mprime))};
    return rd;
  }
  return std::nullopt;
}

std::vector<int> negative_support(const ExponentPair& v) {
  std::vector<int> out;
  if (is_integer(v.e1) && sgn(v.e1) < 0) out.push_back(0);
  if (is_integer(v.e2) && sgn(v.e2) < 0) out.push_back(1);
  return out;
}

NegativeSupportScan minimal_negative_support(const ExponentPair& v, const IntPair& u,
                                             std::int64_t search_bound) {
  NegativeSupportScan scan;
  const auto base = negative_support(v);
  if (base.empty()) {
    scan.minimal = true;
    return scan;
  }
  const ExponentPair step = to_exponent(u);
  for (std::int64_t r = 1; r <= search_bound; ++r) {
    for (std::int64_t m : {-r, r}) {
      auto ns = negative_support(v + Rational(static_cast<long>(m)) * step);
      bool subset = std::includes(base.begin(), base.end(), ns.begin(), ns.end());
      if (subset && ns.size() < base.size()) {
        scan.minimal = false;
        scan.witness_shift = m;
        return scan;
      }
    }
  }
  scan.search_exhausted = true;
  return scan;
}

std::int64_t default_search_bound(std::int64_t a, std::int64_t b) { return 10 * std::max(a, b); }

SparseSeries build_vtilde_series(const ResonanceData& rd, std::int64_t a, std::int64_t b,
                                 const Rational& beta, std::int64_t M) {
  check_matrix(a, b);
  if (a * rd.vtilde.e1 + b * rd.vtilde.e2 != beta)
    throw Error(ErrorCode::InvalidArgument, "resonance data does not match beta");
  SparseSeries s = build_gamma_series({rd.vtilde, axis_direction(a, b), M});
  RayTrunc t = std::get<RayTrunc>(s.trunc());
  t.offset = rd.mprime;
  return SparseSeries(s.terms(), t);
}

std::vector<SparseSeries> axis_basis(std::int64_t a, std::int64_t b, const Rational& beta,
                                     std::int64_t M) {
  auto vs = exponents_along_Y(a, b, beta);
  std::vector<SparseSeries> out(vs.size());
  parallel_for(vs.size(), [&](std::size_t k) {
    out[k] = build_gamma_series({vs[k], axis_direction(a, b), M});
  });
  return out;
}

std::vector<SparseSeries> generic_basis(std::int64_t a, std::int64_t b, const Rational& beta,
                                        std::int64_t M) {
  auto vs = exponents_generic(a, b, beta);
  std::vector<SparseSeries> out(vs.size());
  parallel_for(vs.size(), [&](std::size_t j) {
    out[j] = build_gamma_series({vs[j], generic_direction(a, b), M});
  });
  return out;
}

}  // namespace gkz
