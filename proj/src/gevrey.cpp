#include "gkz/gevrey.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gkz/errors.hpp"
#include "gkz/gamma_series.hpp"
#include "gkz/parallel.hpp"

namespace gkz {

GevreyOrder GevreyOrder::infinity() {
  GevreyOrder s;
  s.infinite_ = true;
  return s;
}

const Rational& GevreyOrder::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "s = inf has no finite value");
  return value_;
}

double GevreyOrder::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::string to_string(const GevreyOrder& s) { return s.is_infinite() ? "inf" : to_string(s.value()); }

GevreyOrder parse_gevrey_order(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t == "inf" || t == "infinity") return GevreyOrder::infinity();
  Rational s = parse_rational(t);
  if (s < 1) throw Error(ErrorCode::ConstraintError, "Gevrey order must satisfy s >= 1");
  return s;
}

std::string to_string(GevreyClass c) {
  switch (c) {
    case GevreyClass::Convergent: return "CONVERGENT";
    case GevreyClass::Gevrey: return "GEVREY";
    case GevreyClass::Polynomial: return "POLYNOMIAL";
  }
  return "UNKNOWN";
}

namespace {

std::int64_t natural_x2(const ExponentPair& e) {
  if (!is_natural(e.e2))
    throw Error(ErrorCode::NonIntegerX2Exponent, "x2-exponent " + to_string(e.e2));
  return to_int64(e.e2);
}

double rescale(double log_mag, int sign, std::int64_t i, double s_minus_1) {
  double v = sign * std::exp(log_mag - s_minus_1 * std::lgamma(static_cast<double>(i) + 1.0));
  if (!std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, "rho_s coefficient overflows double precision");
  return v;
}

Rational ray_index(const ExponentPair& e, const RayTrunc& ray) {
  int i = ray.axis();
  const Rational& coord = i == 0 ? e.e1 : e.e2;
  const Rational& base = i == 0 ? ray.v.e1 : ray.v.e2;
  return (coord - base) / static_cast<long>(ray.u[i]);
}

}  // namespace

FloatSeries rho_s(const SparseSeries& f, const Rational& s) {
  const double sm1 = Rational(s - 1).get_d();
  FloatSeries::Terms out;
  for (const auto& [e, c] : f.terms())
    out.emplace(e, rescale(log_abs(c), sgn(c), natural_x2(e), sm1));
  return FloatSeries(std::move(out), f.trunc());
}

FloatSeries rho_s(const FloatSeries& f, const Rational& s) {
  const double sm1 = Rational(s - 1).get_d();
  FloatSeries::Terms out;
  for (const auto& [e, c] : f.terms())
    out.emplace(e, rescale(std::log(std::fabs(c)), c < 0 ? -1 : 1, natural_x2(e), sm1));
  return FloatSeries(std::move(out), f.trunc());
}

std::vector<std::pair<std::int64_t, Rational>> ray_coefficients(const SparseSeries& f,
                                                                const RayTrunc& ray) {
  std::vector<std::pair<std::int64_t, Rational>> out;
  for (const auto& [e, c] : f.terms())
    out.emplace_back(floor(ray_index(e, ray)).get_si(), c);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

std::vector<double> ratio_sequence(const SparseSeries& f, const RayTrunc& ray) {
  auto coeffs = ray_coefficients(f, ray);
  if (coeffs.size() < 3)
    throw Error(ErrorCode::TooFewTerms, "ratio test needs at least 3 nonzero coefficients");
  std::vector<double> out;
  out.reserve(coeffs.size() - 1);
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
    out.push_back(std::exp(log_abs(coeffs[i + 1].second) - log_abs(coeffs[i].second)));
  return out;
}

GevreyReport estimate_gevrey_index(const SparseSeries& f, const RayTrunc& ray,
                                   const FitWindow& window, double tol) {
  GevreyReport report;
  report.s_theoretical = Rational(static_cast<long>(std::abs(ray.u[0]))) /
                         static_cast<long>(std::abs(ray.u[1]));
  report.fitted_index = std::numeric_limits<double>::quiet_NaN();

  const auto first = static_cast<std::int64_t>(std::floor(window.start_fraction * (ray.M + 1)));
  const auto last = static_cast<std::int64_t>(std::floor(window.end_fraction * (ray.M + 1))) - 1;

  std::vector<double> n;
  std::vector<double> y;
  for (const auto& [e, c] : f.terms()) {
    std::int64_t m = floor(ray_index(e, ray)).get_si();
    if (m < first || m > last) continue;
    n.push_back(static_cast<double>(natural_x2(e)));
    y.push_back(log_abs(c));
  }
  report.coefficient_count = n.size();
  if (n.empty()) {
    report.classification = GevreyClass::Polynomial;
    report.estimated_index = 1.0;
    return report;
  }
  if (n.size() < kMinFitTerms)
    throw Error(ErrorCode::TooFewTerms, std::to_string(n.size()) +
                                            " nonzero coefficients in the fit window, need " +
                                            std::to_string(kMinFitTerms));

  Eigen::MatrixXd X(static_cast<Eigen::Index>(n.size()), 3);
  Eigen::VectorXd Y(static_cast<Eigen::Index>(n.size()));
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto r = static_cast<Eigen::Index>(i);
    X(r, 0) = std::lgamma(n[i] + 1.0);
    X(r, 1) = n[i];
    X(r, 2) = 1.0;
    Y(r) = y[i];
  }
  Eigen::Vector3d coef = X.colPivHouseholderQr().solve(Y);
  Eigen::VectorXd resid = X * coef - Y;
  report.fit_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n.size()));
  report.fitted_index = 1.0 + coef(0);
  report.log_D = coef(1);
  report.log_C = coef(2);
  if (report.fitted_index <= 1.0 + tol) {
    report.classification = GevreyClass::Convergent;
    report.estimated_index = std::max(1.0, report.fitted_index);
  } else {
    report.classification = GevreyClass::Gevrey;
    report.estimated_index = report.fitted_index;
  }
  return report;
}

GevreyReport estimate_gevrey_index(const SparseSeries& f, const FitWindow& window, double tol) {
  const auto* ray = std::get_if<RayTrunc>(&f.trunc());
  if (ray == nullptr)
    throw Error(ErrorCode::InvalidArgument, "Gevrey estimation needs a ray-truncated series");
  return estimate_gevrey_index(f, *ray, window, tol);
}

bool counts_modulo_convergent(const GevreyReport& r, const GevreyOrder& s, double tol) {
  if (r.classification != GevreyClass::Gevrey) return false;
  return s.is_infinite() || r.estimated_index <= s.to_double() + tol;
}

bool is_gevrey_of_order(const GevreyReport& r, const GevreyOrder& s, double tol) {
  if (r.classification != GevreyClass::Gevrey) return true;
  return s.is_infinite() || r.estimated_index <= s.to_double() + tol;
}

SlopeReport slope_scan(std::int64_t a, std::int64_t b, const Rational& beta,
                       const std::vector<GevreyOrder>& s_grid, std::int64_t M) {
  if (!std::is_sorted(s_grid.begin(), s_grid.end()))
    throw Error(ErrorCode::InvalidArgument, "s grid must be ascending");
  for (const auto& s : s_grid)
    if (s < GevreyOrder(1)) throw Error(ErrorCode::InvalidArgument, "s grid values must be >= 1");

  std::vector<SparseSeries> series = axis_basis(a, b, beta, M);
  if (auto rd = resonance_data(a, b, beta))
    series[static_cast<std::size_t>(rd->q)] = build_vtilde_series(*rd, a, b, beta, M);

  SlopeReport report;
  report.s_grid = s_grid;
  report.series_reports.resize(series.size());
  parallel_for(series.size(),
               [&](std::size_t k) { report.series_reports[k] = estimate_gevrey_index(series[k]); });

  for (const auto& s : s_grid) {
    std::size_t count = 0;
    for (const auto& r : report.series_reports) count += counts_modulo_convergent(r, s) ? 1 : 0;
    report.dim_at_s.push_back(count);
  }
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if (report.dim_at_s[i - 1] == 0 && report.dim_at_s[i] == static_cast<std::size_t>(a)) {
      report.detected_gap = s_grid[i];
      break;
    }
  }
  return report;
}

std::vector<GrowthRow> growth_table(const SparseSeries& f, const GevreyReport& report) {
  const auto* ray = std::get_if<RayTrunc>(&f.trunc());
  if (ray == nullptr) throw Error(ErrorCode::InvalidArgument, "growth table needs a ray series");
  const bool fitted = !std::isnan(report.fitted_index);
  std::vector<GrowthRow> rows;
  for (const auto& [e, c] : f.terms()) {
    GrowthRow row{floor(ray_index(e, *ray)).get_si(), log_abs(c), std::nullopt};
    if (fitted) {
      double nn = Rational(e.e2).get_d();
      row.fit = (report.fitted_index - 1.0) * std::lgamma(nn + 1.0) + nn * report.log_D + report.log_C;
    }
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) { return l.m < r.m; });
  return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream os;
  os << "m,logabs,fit\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.m << ",";
    std::snprintf(buf, sizeof buf, "%.12g", r.logabs);
    os << buf << ",";
    if (r.fit) {
      std::snprintf(buf, sizeof buf, "%.12g", *r.fit);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace gkz
