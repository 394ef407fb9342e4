#include <algorithm>
#include <cmath>
#include <complex>

#include "gkz/errors.hpp"
#include "gkz/ext_oracle.hpp"
#include "gkz/gamma_series.hpp"
#include "gkz/report.hpp"
#include "gkz/solvers.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::int64_t kEstimationTerms = 300;

ojson pair_json(const ExponentPair& e) { return ojson::array({to_string(e.e1), to_string(e.e2)}); }

ojson report_json(const GevreyReport& r) {
  ojson j;
  j["estimated_index"] = r.estimated_index;
  j["fitted_index"] = std::isnan(r.fitted_index) ? ojson(nullptr) : ojson(r.fitted_index);
  j["fit_residual"] = r.fit_residual;
  j["coefficient_count"] = r.coefficient_count;
  j["s_theoretical"] = to_string(r.s_theoretical);
  j["classification"] = to_string(r.classification);
  j["log_C"] = r.log_C;
  j["log_D"] = r.log_D;
  return j;
}

std::string describe(const SparseSeries& f) {
  std::string s = to_string(f);
  return s.size() > 120 ? s.substr(0, 117) + "..." : s;
}

void annihilation_checks(const ProblemSpec& spec, std::vector<Check>& checks) {
  const auto [P, E] = hypergeometric_ops(spec.a, spec.b, spec.beta);
  auto axis = axis_basis(spec.a, spec.b, spec.beta, spec.M);
  for (std::size_t k = 0; k < axis.size(); ++k) {
    auto pk = apply(P, axis[k]);
    auto ek = apply(E, axis[k]);
    checks.push_back({"P annihilates phi_v^" + std::to_string(k) + " (axis)", pk.is_zero(),
                      pk.is_zero() ? "" : describe(pk)});
    checks.push_back({"E annihilates phi_v^" + std::to_string(k) + " (axis)", ek.is_zero(),
                      ek.is_zero() ? "" : describe(ek)});
  }
  auto gen = generic_basis(spec.a, spec.b, spec.beta, spec.M);
  for (std::size_t j = 0; j < gen.size(); ++j) {
    auto pj = apply(P, gen[j]);
    auto ej = apply(E, gen[j]);
    checks.push_back({"P annihilates phi_v^" + std::to_string(j) + " (generic)", pj.is_zero(),
                      pj.is_zero() ? "" : describe(pj)});
    checks.push_back({"E annihilates phi_v^" + std::to_string(j) + " (generic)", ej.is_zero(),
                      ej.is_zero() ? "" : describe(ej)});
  }
}

Report basis(const ProblemSpec& spec) {
  Report r;
  ojson axis = ojson::array();
  auto exps = exponents_along_Y(spec.a, spec.b, spec.beta);
  auto series = axis_basis(spec.a, spec.b, spec.beta, spec.M);
  for (std::size_t k = 0; k < series.size(); ++k)
    axis.push_back({{"k", k}, {"v", pair_json(exps[k])}, {"series", to_json(series[k])}});
  ojson generic = ojson::array();
  auto gexps = exponents_generic(spec.a, spec.b, spec.beta);
  auto gseries = generic_basis(spec.a, spec.b, spec.beta, spec.M);
  for (std::size_t j = 0; j < gseries.size(); ++j)
    generic.push_back({{"j", j}, {"v", pair_json(gexps[j])}, {"series", to_json(gseries[j])}});
  r.body["axis"] = axis;
  r.body["generic"] = generic;
  if (auto rd = resonance_data(spec.a, spec.b, spec.beta)) {
    auto vt = build_vtilde_series(*rd, spec.a, spec.b, spec.beta, spec.M);
    auto [P, E] = hypergeometric_ops(spec.a, spec.b, spec.beta);
    auto pv = apply(P, vt);
    r.body["resonance"] = {{"q", rd->q},
                           {"m0", rd->m0},
                           {"mprime", rd->mprime},
                           {"vtilde", pair_json(rd->vtilde)},
                           {"series", to_json(vt)},
                           {"P_of_series", to_json(pv)}};
    auto ev = apply(E, vt);
    r.checks.push_back({"E annihilates phi_vtilde", ev.is_zero(), ev.is_zero() ? "" : describe(ev)});
    r.checks.push_back({"P(phi_vtilde) is a single monomial", pv.size() == 1, describe(pv)});
  } else {
    r.body["resonance"] = nullptr;
  }
  annihilation_checks(spec, r.checks);
  return r;
}

Report gevrey(const ProblemSpec& spec) {
  Report r;
  auto series = axis_basis(spec.a, spec.b, spec.beta, spec.M);
  std::vector<std::pair<std::string, SparseSeries>> named;
  for (std::size_t k = 0; k < series.size(); ++k)
    named.emplace_back("phi_v^" + std::to_string(k), series[k]);
  if (auto rd = resonance_data(spec.a, spec.b, spec.beta))
    named.emplace_back("phi_vtilde^" + std::to_string(rd->q),
                       build_vtilde_series(*rd, spec.a, spec.b, spec.beta, spec.M));
  ojson reports = ojson::array();
  for (const auto& [name, f] : named) {
    GevreyReport g = estimate_gevrey_index(f);
    ojson j = report_json(g);
    j["series"] = name;
    reports.push_back(j);
    if (!r.growth && g.classification == GevreyClass::Gevrey) r.growth = growth_table(f, g);
  }
  r.body["M"] = spec.M;
  r.body["reports"] = reports;
  return r;
}

std::optional<GevreyOrder> nearest_grid_point(const std::vector<GevreyOrder>& grid, const Rational& x) {
  std::optional<GevreyOrder> best;
  Rational best_dist;
  for (const auto& s : grid) {
    if (s.is_infinite()) continue;
    Rational d = abs(s.value() - x);
    if (!best || d < best_dist) {
      best = s;
      best_dist = d;
    }
  }
  return best;
}

Report slope(const ProblemSpec& spec, std::int64_t M) {
  Report r;
  SlopeReport s = slope_scan(spec.a, spec.b, spec.beta, spec.s_values, M);
  ojson grid = ojson::array();
  for (std::size_t i = 0; i < s.s_grid.size(); ++i)
    grid.push_back({{"s", to_string(s.s_grid[i])}, {"dim", s.dim_at_s[i]}});
  const Rational expected = Rational(spec.b) / spec.a;
  r.body["M"] = M;
  r.body["grid"] = grid;
  r.body["detected_gap"] = s.detected_gap ? ojson(to_string(*s.detected_gap)) : ojson(nullptr);
  r.body["expected_slope"] = to_string(expected);
  ojson reports = ojson::array();
  for (const auto& g : s.series_reports) reports.push_back(report_json(g));
  r.body["series_reports"] = reports;
  bool below = false;
  bool above = false;
  for (const auto& g : spec.s_values) {
    below = below || g < GevreyOrder(expected);
    above = above || !(g < GevreyOrder(expected));
  }
  if (!below || !above) {
    r.body["gap_check"] = "grid does not bracket b/a";
    return r;
  }
  auto nearest = nearest_grid_point(spec.s_values, expected);
  bool ok = s.detected_gap && nearest && *s.detected_gap == *nearest;
  r.checks.push_back({"gap at the grid point nearest b/a", ok,
                      "gap " + (s.detected_gap ? to_string(*s.detected_gap) : std::string("none")) +
                          ", nearest " + (nearest ? to_string(*nearest) : std::string("none"))});
  return r;
}

Report recurrence(const ProblemSpec& spec) {
  Report r;
  const std::int64_t a = spec.a;
  const std::int64_t b = spec.b;
  const std::int64_t M = spec.M;
  const BasePoint p = spec.point.value_or(BasePoint(Rational(1)));
  const auto [P, E] = hypergeometric_ops(a, b, spec.beta);
  const DiffOperator Ep = euler_at_point(a, b, spec.beta, p.epsilon());
  const auto rd = resonance_data(a, b, spec.beta);
  const auto exps = exponents_along_Y(a, b, spec.beta);
  ojson classes = ojson::array();
  for (std::int64_t k = 0; k < a; ++k) {
    const Rational gamma = class_exponent(k, a, b, spec.beta);
    ojson cj;
    cj["k"] = k;
    cj["gamma"] = to_string(gamma);
    SparseSeries f;
    ResidueClassSeries h;
    const std::string tag = "class " + std::to_string(k);
    if (rd && rd->q == k) {
      f = apply(P, build_vtilde_series(*rd, a, b, spec.beta, M));
      auto cls = split_classes(f, a, b, spec.beta, Rational(-b), M);
      h = solve_resonant_class(cls[static_cast<std::size_t>(k)], *rd, a, b, spec.beta, M);
      cj["resonant"] = true;
    } else {
      ResidueClassSeries spike{k, gamma - b, std::vector<Rational>(M + 1, Rational(0))};
      spike.coeffs[0] = 1;
      f = to_series(spike, a, b);
      h = solve_P_recurrence({spike}, a, b, spec.beta, p, M)[static_cast<std::size_t>(k)];
      LambdaResult lam = extract_lambda(spike, k, a, b, spec.beta, Rational(1), M);
      cj["resonant"] = false;
      cj["lambda"] = lam.exact ? to_string(*lam.exact) : std::to_string(lam.lambda);
      const std::int64_t mx = std::min<std::int64_t>(M, 8);
      auto expl = explicit_recurrence_solution(spike, a, b, spec.beta, mx);
      bool same = true;
      for (std::int64_t m = 0; m <= mx; ++m) same = same && expl.coeffs[m] == h.coeffs[m];
      r.checks.push_back({"closed form matches recurrence, " + tag, same, ""});
      auto G = gamma_coefficients(exps[k], axis_direction(a, b), M);
      ResidueClassSeries g = h;
      for (std::size_t m = 0; m < g.coeffs.size(); ++m) g.coeffs[m] -= *lam.exact * G[m];
      auto corrected = estimate_gevrey_index(to_series(g, a, b));
      cj["corrected_classification"] = to_string(corrected.classification);
    }
    SparseSeries hs = to_series(h, a, b);
    auto residual = linear_combine({{Rational(1), apply(P, hs)}, {Rational(-1), f}});
    r.checks.push_back({"P(h) = f, " + tag, residual.is_zero(), residual.is_zero() ? "" : describe(residual)});
    auto eh = apply(E, hs);
    r.checks.push_back({"E(h) = 0, " + tag, eh.is_zero(), eh.is_zero() ? "" : describe(eh)});
    if (p.epsilon() == 1 || [&] {
          for (const auto& [e, c] : hs.terms())
            if (!is_integer(e.e1)) return false;
          return true;
        }()) {
      auto local = to_local_coordinates(hs, p, spec.box);
      auto eph = apply(Ep, local);
      r.checks.push_back({"E_p(h) = 0 in local coordinates, " + tag, eph.is_zero(),
                          eph.is_zero() ? "" : describe(eph)});
    }
    cj["f"] = describe(f);
    cj["h_terms"] = hs.size();
    classes.push_back(cj);
  }
  r.body["M"] = M;
  r.body["point"] = to_string(Locus(p));
  r.body["classes"] = classes;
  return r;
}

OracleOptions oracle_options(const ProblemSpec& spec) {
  OracleOptions o;
  o.box = spec.box;
  o.M = std::max(spec.M, kEstimationTerms);
  o.projection_degree = spec.projection_degree;
  return o;
}

void ext_cells(const ProblemSpec& spec, const Locus& point, ojson& tables, std::vector<Check>& checks) {
  for (const auto& s : spec.s_values) {
    for (Sheaf sheaf : {Sheaf::GevreyS, Sheaf::QuotientS}) {
      ExtTable t = compare_oracle_vs_theory(spec.a, spec.b, spec.beta, point, s, sheaf,
                                            oracle_options(spec));
      tables.push_back(to_json(t));
      checks.push_back({"ext " + to_string(point) + " " + to_string(sheaf) + " s=" + to_string(s),
                        t.match(), t.problems.empty() ? "" : t.problems.front()});
    }
  }
}

Report ext(const ProblemSpec& spec) {
  Report r;
  ojson tables = ojson::array();
  ext_cells(spec, spec.point, tables, r.checks);
  r.body["tables"] = tables;
  return r;
}

Report monodromy(const ProblemSpec& spec) {
  Report r;
  auto m = monodromy_eigenvalues(spec.a, spec.b, spec.beta);
  ojson eig = ojson::array();
  bool unit = true;
  std::size_t ones = 0;
  for (std::size_t k = 0; k < m.eigenvalues.size(); ++k) {
    const auto& z = m.eigenvalues[k];
    eig.push_back({{"k", k},
                   {"exponent", to_string(class_exponent(static_cast<std::int64_t>(k), spec.a, spec.b, spec.beta))},
                   {"re", z.real()},
                   {"im", z.imag()}});
    unit = unit && std::abs(std::abs(z) - 1.0) <= 1e-12;
    if (std::abs(z - std::complex<double>(1.0, 0.0)) <= 1e-12) ++ones;
  }
  r.body["eigenvalues"] = eig;
  r.checks.push_back({"eigenvalues on the unit circle", unit, ""});
  if (is_integer(spec.beta))
    r.checks.push_back({"exactly one eigenvalue is 1 for integer beta", ones == 1,
                        std::to_string(ones) + " found"});
  return r;
}

Report verify(const ProblemSpec& spec) {
  Report r;
  annihilation_checks(spec, r.checks);

  const auto [P, E] = hypergeometric_ops(spec.a, spec.b, spec.beta);
  const DiffOperator E_ab = E + DiffOperator::scalar(Rational(spec.a * spec.b));
  r.checks.push_back({"P E = (E + ab) P", compose(P, E) == compose(E_ab, P), ""});

  bool json_ok = true;
  for (const auto& f : axis_basis(spec.a, spec.b, spec.beta, spec.M))
    json_ok = json_ok && series_from_json(to_json(f)) == f;
  r.checks.push_back({"series JSON round trip", json_ok, ""});

  bool spec_ok = false;
  try {
    spec_ok = parse_problem(render_problem(spec)) == spec;
  } catch (const Error&) {
  }
  r.checks.push_back({"problem spec round trip", spec_ok, ""});

  Report rec = recurrence(spec);
  r.checks.insert(r.checks.end(), rec.checks.begin(), rec.checks.end());

  Report sl = slope(spec, std::max(spec.M, kEstimationTerms));
  r.checks.insert(r.checks.end(), sl.checks.begin(), sl.checks.end());

  ojson tables = ojson::array();
  if (spec.point) ext_cells(spec, spec.point, tables, r.checks);
  ext_cells(spec, std::nullopt, tables, r.checks);

  Report mono = monodromy(spec);
  r.checks.insert(r.checks.end(), mono.checks.begin(), mono.checks.end());

  ojson failures = ojson::array();
  for (const auto& c : r.checks)
    if (!c.passed) failures.push_back(c.name);
  r.body["check_count"] = r.checks.size();
  r.body["failures"] = failures;
  return r;
}

}  // namespace

Report run_command(const ProblemSpec& spec, const std::string& command) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  try {
    Report r;
    if (command == "basis") r = basis(spec);
    else if (command == "gevrey") r = gevrey(spec);
    else if (command == "slope") r = slope(spec, spec.M);
    else if (command == "recurrence") r = recurrence(spec);
    else if (command == "ext") r = ext(spec);
    else if (command == "monodromy") r = monodromy(spec);
    else r = verify(spec);
    r.command = command;
    return r;
  } catch (const Error& e) {
    throw Error(e.code(), command + ": " + e.what());
  }
}

}  // namespace gkz
