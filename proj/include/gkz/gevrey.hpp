#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gkz/series.hpp"

namespace gkz {

/// Gevrey order s in [1, inf]; infinity orders above every rational.
class GevreyOrder {
 public:
  GevreyOrder() : value_(1) {}
  GevreyOrder(Rational s) : value_(std::move(s)) {}  // NOLINT
  static GevreyOrder infinity();

  bool is_infinite() const { return infinite_; }
  /// Requires !is_infinite().
  const Rational& value() const;
  double to_double() const;

  friend bool operator==(const GevreyOrder& l, const GevreyOrder& r) {
    return l.infinite_ == r.infinite_ && (l.infinite_ || l.value_ == r.value_);
  }
  friend bool operator<(const GevreyOrder& l, const GevreyOrder& r) {
    if (l.infinite_) return false;
    if (r.infinite_) return true;
    return l.value_ < r.value_;
  }
  friend bool operator<=(const GevreyOrder& l, const GevreyOrder& r) { return !(r < l); }

 private:
  Rational value_;
  bool infinite_ = false;
};

std::string to_string(const GevreyOrder& s);
/// Accepts a fraction literal or "inf".
GevreyOrder parse_gevrey_order(const std::string& text);

enum class GevreyClass { Convergent, Gevrey, Polynomial };
std::string to_string(GevreyClass c);

struct GevreyReport {
  /// Fitted s, clamped to 1 for CONVERGENT and POLYNOMIAL inputs.
  double estimated_index = 1.0;
  /// Unclamped 1 + slope of the fit; NaN when no fit was made.
  double fitted_index = 0.0;
  /// Root-mean-square residual of the fit in log units.
  double fit_residual = 0.0;
  std::size_t coefficient_count = 0;
  /// b/a read from the ray direction u = +-(-b, a).
  Rational s_theoretical;
  GevreyClass classification = GevreyClass::Polynomial;
  double log_C = 0.0;
  double log_D = 0.0;
};

/// Fraction of the ray indices 0..M used for the fit.
struct FitWindow {
  double start_fraction = 0.4;
  double end_fraction = 1.0;
};

inline constexpr double kGevreyTolerance = 0.05;
inline constexpr std::size_t kMinFitTerms = 16;

/// Coefficients divided by (i!)^{s-1}, i the x2-exponent. Evaluated in the
/// log domain. Throws NonIntegerX2Exponent for non-natural x2-exponents.
FloatSeries rho_s(const SparseSeries& f, const Rational& s);
FloatSeries rho_s(const FloatSeries& f, const Rational& s);

/// Nonzero coefficients of f ordered by ray index m (v + m u).
std::vector<std::pair<std::int64_t, Rational>> ray_coefficients(const SparseSeries& f,
                                                                const RayTrunc& ray);

/// |c_{m+1} / c_m| over consecutive nonzero ray coefficients.
std::vector<double> ratio_sequence(const SparseSeries& f, const RayTrunc& ray);

/// Least-squares fit of log|c_n| = (s-1) log n! + n log D + log C over the
/// window, n the x2-exponent. POLYNOMIAL when the window holds no nonzero
/// coefficient; CONVERGENT when the fitted s <= 1 + tol.
GevreyReport estimate_gevrey_index(const SparseSeries& f, const RayTrunc& ray,
                                   const FitWindow& window = {},
                                   double tol = kGevreyTolerance);
/// Uses f's own ray truncation.
GevreyReport estimate_gevrey_index(const SparseSeries& f, const FitWindow& window = {},
                                   double tol = kGevreyTolerance);

/// True when the report places the series in the Gevrey-s quotient: a
/// non-convergent index at most s + tol.
bool counts_modulo_convergent(const GevreyReport& r, const GevreyOrder& s,
                              double tol = kGevreyTolerance);
/// True when the series itself is Gevrey of order s (convergent or
/// polynomial series always are).
bool is_gevrey_of_order(const GevreyReport& r, const GevreyOrder& s,
                        double tol = kGevreyTolerance);

struct SlopeReport {
  std::vector<GevreyOrder> s_grid;
  std::vector<std::size_t> dim_at_s;
  std::optional<GevreyOrder> detected_gap;
  /// One report per counted series (phi_{v^k}, or phi_{vtilde^q} for k = q
  /// in the resonant case).
  std::vector<GevreyReport> series_reports;
};

/// Dimension of the Gevrey-s solutions modulo convergent ones, read off the
/// a axis series, across an ascending grid.
SlopeReport slope_scan(std::int64_t a, std::int64_t b, const Rational& beta,
                       const std::vector<GevreyOrder>& s_grid, std::int64_t M);

/// Rows (m, log|c_m|, fitted model) for plotting coefficient growth.
struct GrowthRow {
  std::int64_t m;
  double logabs;
  std::optional<double> fit;
};
std::vector<GrowthRow> growth_table(const SparseSeries& f, const GevreyReport& report);
std::string growth_csv(const std::vector<GrowthRow>& rows);

}  // namespace gkz
