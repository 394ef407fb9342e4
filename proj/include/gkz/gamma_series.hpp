#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gkz/series.hpp"

namespace gkz {

/// Starting exponent v (A v = beta), lattice direction u (A u = 0) and ray
/// length M of a Gamma-series.
struct GammaSeriesSpec {
  ExponentPair v;
  IntPair u{0, 0};
  std::int64_t M = 0;
};

/// Integer data of the resonant case beta = q b + a m0.
struct ResonanceData {
  std::int64_t q = 0;
  std::int64_t m0 = 0;
  std::int64_t mprime = 0;
  ExponentPair vtilde;

  friend bool operator==(const ResonanceData& l, const ResonanceData& r) {
    return l.q == r.q && l.m0 == r.m0 && l.mprime == r.mprime && l.vtilde == r.vtilde;
  }
};

/// Descending Pochhammer product prod_i prod_{j < alpha_i} (z_i - j).
Rational pochhammer(const ExponentPair& z, const IntPair& alpha);

/// Gamma[v; u] = (v)_{u-} / (v + u)_{u+}, or 0 when the denominator vanishes.
Rational gamma_coeff(const ExponentPair& v, const IntPair& u);

/// v^j = (j, (beta - j a) / b), j = 0..b-1: starting exponents of the
/// convergent family at points off the x1-axis.
std::vector<ExponentPair> exponents_generic(std::int64_t a, std::int64_t b, const Rational& beta);

/// v^k = ((beta - k b) / a, k), k = 0..a-1: starting exponents of the family
/// along Y = {x2 = 0}.
std::vector<ExponentPair> exponents_along_Y(std::int64_t a, std::int64_t b, const Rational& beta);

/// Lattice direction of the axis family, (-b, a).
IntPair axis_direction(std::int64_t a, std::int64_t b);
/// Lattice direction of the generic family, (b, -a).
IntPair generic_direction(std::int64_t a, std::int64_t b);

/// Ray series with coefficient Gamma[v; m u] at v + m u, m = 0..M.
SparseSeries build_gamma_series(const GammaSeriesSpec& spec);

/// The coefficients Gamma[v; m u], m = 0..M, computed incrementally.
std::vector<Rational> gamma_coefficients(const ExponentPair& v, const IntPair& u, std::int64_t M);

/// Present iff beta lies in aN + bN.
std::optional<ResonanceData> resonance_data(std::int64_t a, std::int64_t b, const Rational& beta);

struct NegativeSupportScan {
  bool minimal = true;
  /// True when no smaller negative support was found within the bound, so the
  /// answer is only certified up to |m| <= bound.
  bool search_exhausted = false;
  std::optional<std::int64_t> witness_shift;
};

/// Coordinates of v lying in Z_{<0}.
std::vector<int> negative_support(const ExponentPair& v);

/// Scans lattice translates v + m u, 0 < |m| <= search_bound, for a negative
/// support strictly contained in that of v.
NegativeSupportScan minimal_negative_support(const ExponentPair& v, const IntPair& u,
                                             std::int64_t search_bound);

/// Default scan bound 10 max(a, b).
std::int64_t default_search_bound(std::int64_t a, std::int64_t b);

/// The modified series x^vtilde sum_{m=0..M} Gamma[vtilde; u(m)] x1^{-bm} x2^{am}.
/// It is not annihilated by P.
SparseSeries build_vtilde_series(const ResonanceData& rd, std::int64_t a, std::int64_t b,
                                 const Rational& beta, std::int64_t M);

/// Axis-family series phi_{v^k}, k = 0..a-1.
std::vector<SparseSeries> axis_basis(std::int64_t a, std::int64_t b, const Rational& beta,
                                     std::int64_t M);
/// Generic-family series phi_{v^j}, j = 0..b-1.
std::vector<SparseSeries> generic_basis(std::int64_t a, std::int64_t b, const Rational& beta,
                                        std::int64_t M);

}  // namespace gkz
