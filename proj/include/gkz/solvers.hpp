#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gkz/gamma_series.hpp"
#include "gkz/series.hpp"

namespace gkz {

/// A point p = (epsilon, 0) on Y with epsilon != 0.
class BasePoint {
 public:
  explicit BasePoint(Rational epsilon);
  const Rational& epsilon() const { return epsilon_; }

 private:
  Rational epsilon_;
};

/// One residue class k of a series annihilated by E (or E + ab) at p:
/// coeffs[m] multiplies x1^{gamma - b m} x2^{k + a m}.
struct ResidueClassSeries {
  std::int64_t k = 0;
  Rational gamma;
  std::vector<Rational> coeffs;
};

/// Base x1-exponent (beta - b k) / a of class k.
Rational class_exponent(std::int64_t k, std::int64_t a, std::int64_t b, const Rational& beta);

/// Ray series over m = 0..coeffs.size()-1 with direction (-b, a).
SparseSeries to_series(const ResidueClassSeries& c, std::int64_t a, std::int64_t b);

/// Splits f into classes k = 0..a-1 whose terms sit at
/// x1^{base_k - b m} x2^{k + a m}; base_k = class_exponent(k) + shift.
/// Each class is read up to ray index M. Throws InvalidArgument for a term
/// off that shape.
std::vector<ResidueClassSeries> split_classes(const SparseSeries& f, std::int64_t a,
                                              std::int64_t b, const Rational& beta,
                                              const Rational& shift, std::int64_t M);

/// Splits an origin series into terms with A alpha != beta (first) and
/// A alpha = beta (second). Throws NonNaturalExponent.
std::pair<SparseSeries, SparseSeries> decompose_VW(const SparseSeries& f, std::int64_t a,
                                                   std::int64_t b, const Rational& beta);

/// f with E_A(beta)(f) = g, coefficient g_alpha / (A alpha - beta). Throws
/// ResonantTerm when g has a term on A alpha = beta.
SparseSeries invert_E_origin(const SparseSeries& g, std::int64_t a, std::int64_t b,
                             const Rational& beta);

/// g on the stratum A alpha = beta with P(g) = h2, for h2 on the stratum
/// A alpha = beta - ab. Throws NotInTargetStratum.
SparseSeries surject_P_on_W(const SparseSeries& h2, std::int64_t a, std::int64_t b,
                            const Rational& beta);

/// Monomials alpha in N^2 with a alpha_1 + b alpha_2 = value.
std::vector<ExponentPair> weight_stratum(std::int64_t a, std::int64_t b, const Rational& value);

/// Rewrites f(x1, x2) in the local coordinates (t1, x2), x1 = t1 + eps, up to
/// t1-degree box.N1 and x2-degree box.N2. x1-exponents must be integers
/// (or arbitrary rationals when eps = 1); x2-exponents must be natural.
SparseSeries to_local_coordinates(const SparseSeries& f, const BasePoint& p, const BoxTrunc& box);

/// Triangular solve of E_p(h) = g in (t1, x2) jets:
/// h_{i+1,j} = (g_{ij} - (a i + b j - beta) h_{ij}) / (a eps (i + 1)), with
/// the gauge h_{0,j} = column_seeds[j] (0 when absent). Reads g on `box`;
/// the result is known on (box.N1 + 1, box.N2).
SparseSeries solve_Ep_local(const SparseSeries& g, const BasePoint& p, std::int64_t a,
                            std::int64_t b, const Rational& beta, const BoxTrunc& box,
                            std::span<const Rational> column_seeds = {});

/// Solves P(h) = f, E(h) = 0 class by class:
///   h_{k+a(m+1)} = ((gamma_k - b m)_b h_{k+am} - f_{k+am}) / (k + a(m+1))_a
/// for m = 0..M-1, where f class k sits at x1^{gamma_k - b(m+1)} x2^{k+am}.
/// Missing f coefficients are zero; seeds give h_k (default 0).
std::vector<ResidueClassSeries> solve_P_recurrence(const std::vector<ResidueClassSeries>& f,
                                                   std::int64_t a, std::int64_t b,
                                                   const Rational& beta, const BasePoint& p,
                                                   std::int64_t M,
                                                   std::span<const Rational> seeds = {});

/// Closed form of the same recurrence for the seed h_k = 0:
///   h_{k+a(m+1)} = -(gamma)_{b(m+1)} / (k+a(m+1))! *
///                  sum_{r<=m} (k+ar)! f_{k+ar} / (gamma)_{b(r+1)}.
/// Requires (gamma)_{b(r+1)} != 0 for the range used.
ResidueClassSeries explicit_recurrence_solution(const ResidueClassSeries& f, std::int64_t a,
                                                std::int64_t b, const Rational& beta,
                                                std::int64_t M);

struct LambdaResult {
  std::int64_t k = 0;
  double lambda = 0.0;
  std::size_t partial_sum_terms = 0;
  double tail_bound = 0.0;
  /// Exact value when the input is finitely supported inside the summed range.
  std::optional<Rational> exact;
};

/// Obstruction coefficient of class k:
///   lambda_k = -sum_r (k+ar)! f_{k+ar} / (k! (gamma_k)_{b(r+1)}),
/// summed to r_max with a geometric tail bound. Requires a s < b and a
/// non-resonant class (throws NonGevreyInput / ResonantClass).
LambdaResult extract_lambda(const ResidueClassSeries& f, std::int64_t k, std::int64_t a,
                            std::int64_t b, const Rational& beta, const Rational& s,
                            std::int64_t r_max);

/// Resonant class q: coefficients h_{q+am}, m <= floor(m0/b), are gauged to
/// zero and phi_{vtilde^q} plays the role of phi_{v^q}.
LambdaResult extract_lambda_resonant(const ResidueClassSeries& f, const ResonanceData& rd,
                                     std::int64_t a, std::int64_t b, const Rational& beta,
                                     const Rational& s, std::int64_t r_max);

/// The recurrence solution of class q under the resonant gauge (zeros up to
/// floor(m0/b)), over m = 0..M.
ResidueClassSeries solve_resonant_class(const ResidueClassSeries& f, const ResonanceData& rd,
                                        std::int64_t a, std::int64_t b, const Rational& beta,
                                        std::int64_t M);

}  // namespace gkz
