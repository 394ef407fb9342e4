#include "gkz/ext_oracle.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "gkz/errors.hpp"
#include "gkz/gamma_series.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

std::string to_string(const Locus& p) {
  return p ? "(" + to_string(p->epsilon()) + ",0)" : "origin";
}

std::string to_string(Sheaf s) { return s == Sheaf::GevreyS ? "O(s)" : "Q(s)"; }

namespace {

bool at_origin(const Locus& p) { return !p.has_value(); }

// Coefficient of (E - c) h at (i, j) in terms of h_{ij} and h_{i+1,j}.
void add_euler_row(SparseMatrix& m, std::size_t row, const SolutionComplexMaps& maps,
                   const std::function<std::size_t(std::int64_t, std::int64_t)>& col,
                   std::int64_t i, std::int64_t j, const Rational& c, const Rational& sign) {
  m.add(row, col(i, j), sign * (maps.a * i + maps.b * j - c));
  if (maps.point) m.add(row, col(i + 1, j), sign * maps.a * maps.point->epsilon() * (i + 1));
}

void add_p_row(SparseMatrix& m, std::size_t row, const SolutionComplexMaps& maps,
               const std::function<std::size_t(std::int64_t, std::int64_t)>& col,
               std::int64_t i, std::int64_t j, const Rational& sign) {
  m.add(row, col(i + maps.b, j), sign * rising_from_next(Rational(i), maps.b));
  m.add(row, col(i, j + maps.a), -sign * rising_from_next(Rational(j), maps.a));
}

}  // namespace

SolutionComplexMaps solution_complex_maps(std::int64_t a, std::int64_t b, const Rational& beta,
                                          const Locus& point, const BoxTrunc& box) {
  check_matrix(a, b);
  SolutionComplexMaps maps;
  maps.a = a;
  maps.b = b;
  maps.beta = beta;
  maps.point = point;
  maps.box = box;
  const std::int64_t e_shift = at_origin(point) ? 0 : 1;
  const std::int64_t p1 = box.N1 - b;
  const std::int64_t p2 = box.N2 - a;
  const std::int64_t r1 = at_origin(point) ? p1 : p1 - 1;
  if (r1 < 0 || p2 < 0)
    throw Error(ErrorCode::BoxTooSmall, "box (" + std::to_string(box.N1) + "," +
                                            std::to_string(box.N2) + ") leaves psi1 without rows");

  for (std::int64_t i = 0; i <= box.N1; ++i)
    for (std::int64_t j = 0; j <= box.N2; ++j) maps.domain.push_back({i, j});
  for (std::int64_t i = 0; i <= p1; ++i)
    for (std::int64_t j = 0; j <= p2; ++j) maps.p_rows.push_back({i, j});
  for (std::int64_t i = 0; i <= box.N1 - e_shift; ++i)
    for (std::int64_t j = 0; j <= box.N2; ++j) maps.e_rows.push_back({i, j});
  for (std::int64_t i = 0; i <= r1; ++i)
    for (std::int64_t j = 0; j <= p2; ++j) maps.psi1_rows.push_back({i, j});

  auto dom = [&](std::int64_t i, std::int64_t j) { return maps.domain_index(i, j); };
  maps.psi0 = SparseMatrix(maps.p_rows.size() + maps.e_rows.size(), maps.domain.size());
  std::size_t r = 0;
  for (const auto& [i, j] : maps.p_rows) add_p_row(maps.psi0, r++, maps, dom, i, j, Rational(1));
  for (const auto& [i, j] : maps.e_rows)
    add_euler_row(maps.psi0, r++, maps, dom, i, j, beta, Rational(1));

  const std::size_t n_p = maps.p_rows.size();
  auto f1 = [&](std::int64_t i, std::int64_t j) {
    return static_cast<std::size_t>(i * (p2 + 1) + j);
  };
  auto f2 = [&](std::int64_t i, std::int64_t j) {
    return n_p + static_cast<std::size_t>(i * (box.N2 + 1) + j);
  };
  maps.psi1 = SparseMatrix(maps.psi1_rows.size(), maps.psi0.rows());
  r = 0;
  for (const auto& [i, j] : maps.psi1_rows) {
    add_euler_row(maps.psi1, r, maps, f1, i, j, beta - a * b, Rational(1));
    add_p_row(maps.psi1, r, maps, f2, i, j, Rational(-1));
    ++r;
  }
  return maps;
}

std::vector<std::size_t> psi0_column_order(const SolutionComplexMaps& maps) {
  std::vector<std::size_t> order;
  order.reserve(maps.domain.size());
  for (std::int64_t i = maps.box.N1; i >= 0; --i)
    for (std::int64_t j = 0; j <= maps.box.N2; ++j) order.push_back(maps.domain_index(i, j));
  return order;
}

std::int64_t default_projection_degree(const BoxTrunc& box) { return box.N2 / 3; }

namespace {

SparseMatrix with_identity_rows(const SparseMatrix& m, const std::vector<std::size_t>& cols) {
  SparseMatrix out(0, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) out.append_row(m.row(r));
  for (std::size_t c : cols) out.append_row({{c, Rational(1)}});
  return out;
}

SparseMatrix with_extra_columns(const SparseMatrix& m,
                                const std::vector<std::vector<std::pair<std::size_t, Rational>>>& extra) {
  SparseMatrix out(m.rows(), m.cols() + extra.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) out.add(r, c, v);
  for (std::size_t k = 0; k < extra.size(); ++k)
    for (const auto& [r, v] : extra[k]) out.add(r, m.cols() + k, v);
  return out;
}

}  // namespace

std::size_t jet_kernel_dim(const SolutionComplexMaps& maps, std::int64_t projection_degree) {
  if (projection_degree < 0 || projection_degree >= maps.box.N2 - maps.a)
    throw Error(ErrorCode::InvalidArgument, "projection degree must lie in [0, N2 - a)");
  std::vector<std::size_t> low;
  for (std::size_t c = 0; c < maps.domain.size(); ++c)
    if (maps.domain[c].j <= projection_degree) low.push_back(c);
  auto order = psi0_column_order(maps);
  return rank(with_identity_rows(maps.psi0, low), order) - rank(maps.psi0, order);
}

ExtTable predicted_ext_table(std::int64_t a, std::int64_t b, const Rational& beta,
                             const Locus& point, const GevreyOrder& s, Sheaf sheaf) {
  check_matrix(a, b);
  ExtTable t;
  t.point = point;
  t.sheaf = sheaf;
  t.s = s;
  const bool resonant = resonance_data(a, b, beta).has_value();
  const bool above_slope = !(s < GevreyOrder(Rational(b) / a));
  const auto ua = static_cast<std::size_t>(a);
  if (at_origin(point)) {
    if (sheaf == Sheaf::GevreyS && resonant) t.predicted = {1, 1, 0};
  } else if (sheaf == Sheaf::GevreyS) {
    t.predicted[0] = above_slope ? ua : (resonant ? 1 : 0);
    t.predicted[1] = (!above_slope && resonant) ? 1 : 0;
  } else {
    t.predicted[0] = above_slope ? ua : 0;
  }
  return t;
}

struct OracleContext::Impl {
  std::int64_t a;
  std::int64_t b;
  Rational beta;
  Locus point;
  OracleOptions opts;
  std::optional<ResonanceData> rd;
  SolutionComplexMaps maps;
  std::size_t kernel = 0;
  std::size_t rank0 = 0;
  std::size_t rank1 = 0;
  std::vector<std::string> problems;

  // At p.
  std::vector<SparseSeries> basis;
  std::vector<GevreyReport> basis_reports;
  std::optional<SparseSeries> vtilde;
  std::optional<GevreyReport> vtilde_report;
  struct ClassWitness {
    SparseSeries f;
    SparseSeries h;
    double best_index = 1.0;
    bool f_convergent = true;
  };
  std::vector<ClassWitness> ext1;

  // At the origin.
  std::size_t ext0_quotient = 0;
  std::size_t ext2_quotient = 0;
  std::optional<SparseSeries> origin_witness;
  bool origin_witness_ok = false;

  void check_fit(const GevreyReport& r, const std::string& what) const {
    if (r.classification != GevreyClass::Polynomial && r.fit_residual > opts.max_fit_residual)
      throw Error(ErrorCode::InconclusiveGevreyFit,
                  what + ": fit residual " + std::to_string(r.fit_residual));
  }

  GevreyReport classify(const SparseSeries& f, const std::string& what) const {
    GevreyReport r = estimate_gevrey_index(f);
    check_fit(r, what);
    return r;
  }

  void build_point();
  void build_origin();
};

void OracleContext::Impl::build_point() {
  const auto [P, E] = hypergeometric_ops(a, b, beta);
  const std::int64_t M = opts.M;
  basis = axis_basis(a, b, beta, M);
  for (std::size_t k = 0; k < basis.size(); ++k)
    basis_reports.push_back(classify(basis[k], "phi_v^" + std::to_string(k)));
  if (rd) {
    vtilde = build_vtilde_series(*rd, a, b, beta, M);
    vtilde_report = classify(*vtilde, "phi_vtilde");
  }

  const DiffOperator E_ab = E + DiffOperator::scalar(Rational(a * b));
  const auto exps = exponents_along_Y(a, b, beta);
  for (std::int64_t k = 0; k < a; ++k) {
    ClassWitness w;
    const Rational gamma = class_exponent(k, a, b, beta);
    if (rd && rd->q == k) {
      w.f = apply(P, *vtilde);
      auto classes = split_classes(w.f, a, b, beta, Rational(-b), M);
      ResidueClassSeries h = solve_resonant_class(classes[k], *rd, a, b, beta, M);
      w.h = to_series(h, a, b);
      w.best_index = classify(w.h, "resonant witness").estimated_index;
    } else {
      ResidueClassSeries spike{k, gamma - b, std::vector<Rational>(M + 1, Rational(0))};
      spike.coeffs[0] = 1;
      w.f = SparseSeries::monomial(Rational(1), {gamma - b, Rational(k)});
      auto hs = solve_P_recurrence({spike}, a, b, beta, *point, M);
      const ResidueClassSeries& h = hs[static_cast<std::size_t>(k)];
      w.h = to_series(h, a, b);
      LambdaResult lam = extract_lambda(spike, k, a, b, beta, Rational(1), M);
      if (!lam.exact) throw Error(ErrorCode::InvalidArgument, "spike lambda is not exact");
      auto G = gamma_coefficients(exps[k], axis_direction(a, b), M);
      ResidueClassSeries g = h;
      for (std::size_t m = 0; m < g.coeffs.size(); ++m) g.coeffs[m] -= *lam.exact * G[m];
      double with_h = classify(w.h, "recurrence solution").estimated_index;
      double with_g = classify(to_series(g, a, b), "lambda-corrected solution").estimated_index;
      w.best_index = std::min(with_h, with_g);
    }
    if (!apply(E_ab, w.f).is_zero()) problems.push_back("witness f of class " + std::to_string(k) + " is not killed by E+ab");
    if (!linear_combine({{Rational(1), apply(P, w.h)}, {Rational(-1), w.f}}).is_zero())
      problems.push_back("P(h) != f in class " + std::to_string(k));
    if (!apply(E, w.h).is_zero()) problems.push_back("E(h) != 0 in class " + std::to_string(k));
    w.f_convergent = w.f.size() < kMinFitTerms ||
                     classify(w.f, "witness f").classification != GevreyClass::Gevrey;
    ext1.push_back(std::move(w));
  }
}

void OracleContext::Impl::build_origin() {
  const BoxTrunc& box = maps.box;
  for (const auto& al : weight_stratum(a, b, beta))
    if (al.e1 > box.N1 - b || al.e2 > box.N2 - a)
      throw Error(ErrorCode::BoxTooSmall, "the stratum A alpha = beta leaves the box interior");

  std::vector<std::size_t> off_stratum;
  for (std::size_t c = 0; c < maps.domain.size(); ++c)
    if (a * maps.domain[c].i + b * maps.domain[c].j != beta) off_stratum.push_back(c);
  ext0_quotient = rank(with_identity_rows(maps.psi0, off_stratum)) - rank0;

  std::vector<std::vector<std::pair<std::size_t, Rational>>> stratum_cols;
  for (std::size_t r = 0; r < maps.psi1_rows.size(); ++r)
    if (a * maps.psi1_rows[r].i + b * maps.psi1_rows[r].j == beta - a * b)
      stratum_cols.push_back({{r, Rational(1)}});
  ext2_quotient = maps.psi1.rows() - rank(with_extra_columns(maps.psi1, stratum_cols));

  if (rd) {
    origin_witness = axis_basis(a, b, beta, opts.M)[static_cast<std::size_t>(rd->q)];
    // (0, phi) as a vector in the codomain of psi0: zero P block, phi in the E block.
    std::vector<std::pair<std::size_t, Rational>> w;
    std::map<std::size_t, Rational> wv;
    const std::size_t n_p = maps.p_rows.size();
    for (const auto& [e, c] : origin_witness->terms()) {
      std::int64_t i = to_int64(e.e1);
      std::int64_t j = to_int64(e.e2);
      if (i > box.N1 || j > box.N2) {
        problems.push_back("origin witness leaves the box");
        return;
      }
      std::size_t idx = n_p + static_cast<std::size_t>(i * (box.N2 + 1) + j);
      w.emplace_back(idx, c);
      wv[idx] = c;
    }
    bool in_kernel = true;
    for (std::size_t r = 0; r < maps.psi1.rows(); ++r) {
      Rational acc = 0;
      for (const auto& [c, v] : maps.psi1.row(r))
        if (auto it = wv.find(c); it != wv.end()) acc += v * it->second;
      if (acc != 0) in_kernel = false;
    }
    bool outside_image = rank(with_extra_columns(maps.psi0, {w})) > rank0;
    origin_witness_ok = in_kernel && outside_image;
    if (!origin_witness_ok) problems.push_back("(0, phi_v^q) is not a nonzero Ext1 class");
  }
}

OracleContext::OracleContext(std::int64_t a, std::int64_t b, const Rational& beta,
                             const Locus& point, const OracleOptions& opts)
    : impl_(std::make_unique<Impl>()) {
  Impl& d = *impl_;
  d.a = a;
  d.b = b;
  d.beta = beta;
  d.point = point;
  d.opts = opts;
  d.rd = resonance_data(a, b, beta);
  d.maps = solution_complex_maps(a, b, beta, point, opts.box);
  if (!d.maps.psi1.multiply(d.maps.psi0).is_zero()) d.problems.push_back("psi1 psi0 != 0");
  d.rank0 = rank(d.maps.psi0, psi0_column_order(d.maps));
  d.rank1 = rank(d.maps.psi1);
  if (point) {
    const std::int64_t deg = opts.projection_degree.value_or(default_projection_degree(opts.box));
    d.kernel = jet_kernel_dim(d.maps, deg);
    if (d.kernel != static_cast<std::size_t>(a))
      d.problems.push_back("jet kernel dimension " + std::to_string(d.kernel) + " != a");
    d.build_point();
  } else {
    d.kernel = d.maps.domain.size() - d.rank0;
    d.build_origin();
  }
}

OracleContext::~OracleContext() = default;
OracleContext::OracleContext(OracleContext&&) noexcept = default;

std::size_t OracleContext::kernel_dim() const { return impl_->kernel; }
const SolutionComplexMaps& OracleContext::maps() const { return impl_->maps; }

ExtTable OracleContext::compare(const GevreyOrder& s, Sheaf sheaf) const {
  const Impl& d = *impl_;
  ExtTable t = predicted_ext_table(d.a, d.b, d.beta, d.point, s, sheaf);
  t.problems = d.problems;
  std::array<std::size_t, 3> m{0, 0, 0};
  const std::size_t coker1 = d.maps.psi1.rows() - d.rank1;

  if (!d.point) {
    if (sheaf == Sheaf::GevreyS) {
      m[0] = d.kernel;
      m[1] = (d.maps.psi1.cols() - d.rank1) - d.rank0;
      m[2] = coker1;
      if (d.origin_witness && d.origin_witness_ok)
        t.witnesses.push_back({1, "(0, phi_v^q)", SparseSeries(), *d.origin_witness});
    } else {
      m[0] = d.ext0_quotient;
      m[1] = 0;
      if (d.origin_witness && d.origin_witness->size() >= kMinFitTerms)
        t.problems.push_back("origin witness is not a polynomial");
      m[2] = d.ext2_quotient;
    }
    t.measured = m;
    return t;
  }

  for (std::size_t k = 0; k < d.basis.size(); ++k) {
    const bool resonant_slot = d.rd && static_cast<std::size_t>(d.rd->q) == k;
    if (sheaf == Sheaf::GevreyS) {
      if (is_gevrey_of_order(d.basis_reports[k], s)) {
        ++m[0];
        t.witnesses.push_back({0, "phi_v^" + std::to_string(k), d.basis[k], SparseSeries()});
      }
    } else {
      const auto& series = resonant_slot ? *d.vtilde : d.basis[k];
      const auto& report = resonant_slot ? *d.vtilde_report : d.basis_reports[k];
      if (counts_modulo_convergent(report, s)) {
        ++m[0];
        t.witnesses.push_back({0, resonant_slot ? "phi_vtilde^" + std::to_string(k)
                                                : "phi_v^" + std::to_string(k),
                               series, SparseSeries()});
      }
    }
  }
  for (std::size_t k = 0; k < d.ext1.size(); ++k) {
    const auto& w = d.ext1[k];
    const bool obstructed = !s.is_infinite() && w.best_index > s.to_double() + kGevreyTolerance;
    if (!obstructed) continue;
    if (sheaf == Sheaf::QuotientS && w.f_convergent) continue;
    ++m[1];
    t.witnesses.push_back({1, "(P(phi), 0) class " + std::to_string(k), w.f, SparseSeries()});
  }
  m[2] = coker1;
  t.measured = m;
  return t;
}

ExtTable compare_oracle_vs_theory(std::int64_t a, std::int64_t b, const Rational& beta,
                                  const Locus& point, const GevreyOrder& s, Sheaf sheaf,
                                  const OracleOptions& opts) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<OracleContext>> cache;
  std::ostringstream key;
  key << a << ' ' << b << ' ' << to_string(beta) << ' ' << to_string(point) << ' '
      << opts.box.N1 << ' ' << opts.box.N2 << ' ' << opts.M << ' '
      << opts.projection_degree.value_or(-1) << ' ' << opts.max_fit_residual;
  std::shared_ptr<OracleContext> ctx;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) ctx = it->second;
  }
  if (!ctx) {
    ctx = std::make_shared<OracleContext>(a, b, beta, point, opts);
    std::lock_guard lock(mu);
    cache.emplace(key.str(), ctx);
  }
  return ctx->compare(s, sheaf);
}

nlohmann::ordered_json to_json(const ExtTable& t) {
  auto dims = [](const std::array<std::size_t, 3>& v) {
    nlohmann::ordered_json j;
    for (int i = 0; i < 3; ++i) j[std::to_string(i)] = v[i];
    return j;
  };
  nlohmann::ordered_json j;
  j["point"] = to_string(t.point);
  j["sheaf"] = to_string(t.sheaf);
  j["s"] = to_string(t.s);
  j["predicted"] = dims(t.predicted);
  j["measured"] = t.measured ? dims(*t.measured) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const auto& w : t.witnesses) {
    nlohmann::ordered_json wj;
    wj["degree"] = w.degree;
    wj["label"] = w.label;
    wj["first"] = to_json(w.first);
    wj["second"] = to_json(w.second);
    ws.push_back(wj);
  }
  j["witnesses"] = ws;
  j["problems"] = t.problems;
  j["status"] = t.match() ? "MATCH" : "MISMATCH";
  return j;
}

MonodromySpectrum monodromy_eigenvalues(std::int64_t a, std::int64_t b, const Rational& beta) {
  check_matrix(a, b);
  MonodromySpectrum out;
  for (std::int64_t k = 0; k < a; ++k) {
    Rational r = (beta - b * k) / a;
    Rational frac = r - Rational(floor(r));
    if (frac == 0) {
      out.eigenvalues.emplace_back(1.0, 0.0);
      continue;
    }
    out.eigenvalues.push_back(std::polar(1.0, 2.0 * std::numbers::pi * frac.get_d()));
  }
  return out;
}

}  // namespace gkz
