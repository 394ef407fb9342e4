// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: gkz_acceptance [N ...]   (all criteria when no N is given)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gkz/ext_oracle.hpp"
#include "gkz/gamma_series.hpp"
#include "gkz/gevrey.hpp"
#include "gkz/problem.hpp"
#include "gkz/solvers.hpp"
#include "gkz/weyl.hpp"
#include "oracles.hpp"

using namespace gkz;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> run;
};

Rational rat(const char* s) { return parse_rational(s); }

std::pair<std::int64_t, std::int64_t> random_matrix(std::int64_t max_entry) {
  for (;;) {
    std::int64_t a = oracle::uniform(1, max_entry - 1);
    std::int64_t b = oracle::uniform(a + 1, max_entry);
    if (std::gcd(a, b) == 1) return {a, b};
  }
}

// Denominator 11 keeps every class exponent (beta - b k) / a off the integers
// for a, b <= 7.
Rational random_generic_beta() {
  Rational r(static_cast<long>(oracle::uniform(-60, 60)) * 11 + oracle::uniform(1, 10), 11ul);
  r.canonicalize();
  return r;
}

void annihilation(Outcome& out) {
  const std::int64_t a = 2, b = 3, M = 50;
  std::size_t checked = 0;
  for (const char* beta : {"1/2", "8"}) {
    auto [P, E] = hypergeometric_ops(a, b, rat(beta));
    auto axis = axis_basis(a, b, rat(beta), M);
    auto generic = generic_basis(a, b, rat(beta), M);
    out.require(axis.size() == 2 && generic.size() == 3, "wrong basis sizes for beta = " + std::string(beta));
    for (const auto& family : {axis, generic}) {
      for (const auto& f : family) {
        out.require(apply(P, f).is_zero(), "P does not annihilate a series, beta = " + std::string(beta));
        out.require(apply(E, f).is_zero(), "E does not annihilate a series, beta = " + std::string(beta));
        ++checked;
      }
    }
  }
  out.detail << checked << " series annihilated by P and E";
}

void commutation(Outcome& out) {
  for (int t = 0; t < 20; ++t) {
    auto [a, b] = random_matrix(7);
    Rational beta = oracle::random_rational(12, 7);
    auto [P, E] = hypergeometric_ops(a, b, beta);
    auto lhs = compose(P, E);
    auto rhs = compose(E + DiffOperator::scalar(Rational(a * b)), P);
    std::ostringstream tag;
    tag << "(" << a << "," << b << "," << to_string(beta) << ")";
    out.require(lhs == rhs, "P E != (E + ab) P for " + tag.str());
  }
  out.detail << "20 random (a, b, beta)";
}

void gevrey_index(Outcome& out) {
  const std::int64_t M = 300;
  std::vector<std::string> gaps;
  for (auto [a, b] : {std::pair<std::int64_t, std::int64_t>{1, 2}, {2, 3}, {3, 5}}) {
    const double expected = static_cast<double>(b) / static_cast<double>(a);
    for (const char* beta : {"1/2", "7/11"}) {
      auto basis = axis_basis(a, b, rat(beta), M);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        auto r = estimate_gevrey_index(basis[k]);
        std::ostringstream tag;
        tag << "(" << a << "," << b << "," << beta << ") k=" << k << " index " << r.estimated_index;
        out.require(std::fabs(r.estimated_index - expected) <= kGevreyTolerance, tag.str());
      }
    }
    auto grid = default_s_grid();
    auto scan = slope_scan(a, b, rat("1/2"), grid, M);
    const GevreyOrder* nearest = nullptr;
    double best = 1e9;
    for (const auto& g : grid) {
      double d = std::fabs(g.to_double() - expected);
      if (d < best) best = d, nearest = &g;
    }
    out.require(scan.detected_gap && nearest && *scan.detected_gap == *nearest,
                "slope gap for (" + std::to_string(a) + "," + std::to_string(b) + ") is " +
                    (scan.detected_gap ? to_string(*scan.detected_gap) : std::string("none")));
    gaps.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ") gap " +
                   (scan.detected_gap ? to_string(*scan.detected_gap) : std::string("none")));
  }
  for (std::size_t i = 0; i < gaps.size(); ++i) out.detail << (i ? ", " : "") << gaps[i];
}

void resonant_case(Outcome& out) {
  const std::int64_t a = 2, b = 3, M = 60;
  const Rational beta(8);
  auto [P, E] = hypergeometric_ops(a, b, beta);
  auto phi0 = axis_basis(a, b, beta, M)[0];
  out.require(phi0.size() == 2, "phi_v0 has " + std::to_string(phi0.size()) + " terms");
  auto rd = resonance_data(a, b, beta);
  out.require(rd.has_value(), "beta = 8 not detected as resonant");
  if (!rd) return;
  ResonanceData expected{0, 4, 2, ExponentPair{Rational(-2), Rational(4)}};
  out.require(*rd == expected, "resonance data differs from (0, 4, 2, (-2,4))");
  auto vt = build_vtilde_series(*rd, a, b, beta, M);
  auto pv = apply(P, vt);
  out.require(pv.size() == 1, "P(phi_vtilde) has " + std::to_string(pv.size()) + " terms");
  out.require(apply(E, vt).is_zero(), "E(phi_vtilde) != 0");
  out.detail << "phi_v0 = " << to_string(phi0) << ", P(phi_vtilde) = " << to_string(pv);
}

void recurrence_round_trip(Outcome& out) {
  const std::int64_t M = 60;
  const BasePoint p(Rational(1));
  const BoxTrunc box{12, 12};
  for (int t = 0; t < 20; ++t) {
    auto [a, b] = random_matrix(7);
    Rational beta = random_generic_beta();
    auto [P, E] = hypergeometric_ops(a, b, beta);
    auto Ep = euler_at_point(a, b, beta, p.epsilon());
    std::ostringstream tag;
    tag << "(" << a << "," << b << "," << to_string(beta) << ")";
    std::vector<ResidueClassSeries> f;
    for (std::int64_t k = 0; k < a; ++k) {
      ResidueClassSeries c{k, class_exponent(k, a, b, beta) - b, std::vector<Rational>(M + 1, Rational(0))};
      for (std::int64_t m = 0; m < 4; ++m) c.coeffs[m] = oracle::random_rational(5, 4);
      f.push_back(std::move(c));
    }
    auto h = solve_P_recurrence(f, a, b, beta, p, M);
    auto exps = exponents_along_Y(a, b, beta);
    auto seeds = std::vector<Rational>(a, Rational(1));
    std::vector<ResidueClassSeries> zero;
    for (std::int64_t k = 0; k < a; ++k)
      zero.push_back({k, class_exponent(k, a, b, beta) - b, std::vector<Rational>(11, Rational(0))});
    auto hom = solve_P_recurrence(zero, a, b, beta, p, 10, seeds);
    for (std::int64_t k = 0; k < a; ++k) {
      auto hs = to_series(h[k], a, b);
      auto fs = to_series(f[k], a, b);
      auto residual = linear_combine({{Rational(1), apply(P, hs)}, {Rational(-1), fs}});
      out.require(residual.is_zero(), "P(h) != f for " + tag.str());
      out.require(apply(E, hs).is_zero(), "E(h) != 0 for " + tag.str());
      out.require(apply(Ep, to_local_coordinates(hs, p, box)).is_zero(), "E_p(h) != 0 for " + tag.str());

      auto G = gamma_coefficients(exps[k], axis_direction(a, b), 10);
      for (std::int64_t m = 0; m <= 10; ++m)
        out.require(hom[k].coeffs[m] == G[m], "unit-seed solve differs from Gamma coefficients for " + tag.str());

      auto expl = explicit_recurrence_solution(f[k], a, b, beta, 8);
      for (std::int64_t m = 0; m <= 8; ++m)
        out.require(expl.coeffs[m] == h[k].coeffs[m], "closed form differs from recurrence for " + tag.str());
    }
  }
  out.detail << "20 random inputs, M = " << M;
}

void lambda_extraction(Outcome& out) {
  struct Case {
    std::int64_t a, b;
    const char* beta;
  };
  double worst = 0.0;
  double worst_index = 1.0;
  for (auto c : {Case{2, 3, "1/2"}, Case{1, 2, "1/3"}, Case{3, 5, "1/2"}, Case{2, 5, "-7/3"}}) {
    const Rational beta = rat(c.beta);
    auto exps = exponents_along_Y(c.a, c.b, beta);
    for (std::int64_t k = 0; k < c.a; ++k) {
      for (std::int64_t r0 : {0, 1, 3}) {
        const std::int64_t M = 200;
        ResidueClassSeries f{k, class_exponent(k, c.a, c.b, beta) - c.b, std::vector<Rational>(M + 1, Rational(0))};
        f.coeffs[r0] = 1;
        auto lam = extract_lambda(f, k, c.a, c.b, beta, Rational(1), M);
        double ref = oracle::spike_lambda(k, r0, c.a, c.b, beta).get_d();
        double rel = std::fabs(lam.lambda - ref) / std::fabs(ref);
        worst = std::max(worst, rel);
        std::ostringstream tag;
        tag << "(" << c.a << "," << c.b << "," << c.beta << ") k=" << k << " r0=" << r0;
        out.require(rel <= 1e-10, "lambda off by " + std::to_string(rel) + " for " + tag.str());
        if (!lam.exact) {
          out.require(false, "no exact lambda for " + tag.str());
          continue;
        }
        auto h = solve_P_recurrence({f}, c.a, c.b, beta, BasePoint(Rational(1)), M)[k];
        auto G = gamma_coefficients(exps[k], axis_direction(c.a, c.b), M);
        for (std::size_t m = 0; m < h.coeffs.size(); ++m) h.coeffs[m] -= *lam.exact * G[m];
        auto rep = estimate_gevrey_index(to_series(h, c.a, c.b));
        worst_index = std::max(worst_index, rep.estimated_index);
        out.require(rep.estimated_index <= 1.1, "corrected series has index " +
                                                    std::to_string(rep.estimated_index) + " for " + tag.str());
      }
    }
  }
  out.detail << "max relative lambda error " << worst << ", max corrected index " << worst_index;
}

void dimension_oracle(Outcome& out) {
  struct Case {
    std::int64_t a, b;
    const char* beta;
  };
  const Locus p = BasePoint(Rational(1));
  std::size_t cells = 0;
  for (auto c : {Case{2, 3, "1/2"}, Case{2, 3, "8"}, Case{1, 2, "5"}}) {
    const Rational beta = rat(c.beta);
    std::ostringstream tag;
    tag << "(" << c.a << "," << c.b << "," << c.beta << ")";
    auto k24 = jet_kernel_dim(solution_complex_maps(c.a, c.b, beta, p, BoxTrunc{24, 24}), 8);
    auto k48 = jet_kernel_dim(solution_complex_maps(c.a, c.b, beta, p, BoxTrunc{48, 48}), 8);
    out.require(k24 == static_cast<std::size_t>(c.a), "kernel " + std::to_string(k24) + " != a for " + tag.str());
    out.require(k24 == k48, "kernel not stable under box doubling for " + tag.str());
    auto grid = default_s_grid();
    grid.push_back(GevreyOrder::infinity());
    for (const Locus& point : {Locus(std::nullopt), p}) {
      for (const auto& s : grid) {
        for (Sheaf sheaf : {Sheaf::GevreyS, Sheaf::QuotientS}) {
          auto t = compare_oracle_vs_theory(c.a, c.b, beta, point, s, sheaf);
          ++cells;
          out.require(t.match(), "MISMATCH at " + tag.str() + " " + to_string(point) + " " +
                                     to_string(sheaf) + " s=" + to_string(s));
          if (!point && sheaf == Sheaf::QuotientS)
            out.require(t.measured && *t.measured == std::array<std::size_t, 3>{0, 0, 0},
                        "origin quotient not all zero for " + tag.str());
        }
      }
    }
  }
  out.detail << cells << " cells compared";
}

void monodromy(Outcome& out) {
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    auto [a, b] = random_matrix(9);
    Rational beta = t % 3 == 0 ? Rational(static_cast<long>(oracle::uniform(-20, 20))) : oracle::random_rational(20, 9);
    auto m = monodromy_eigenvalues(a, b, beta).eigenvalues;
    out.require(m.size() == static_cast<std::size_t>(a), "wrong eigenvalue count");
    std::size_t ones = 0;
    for (std::int64_t k = 0; k < a && k < static_cast<std::int64_t>(m.size()); ++k) {
      double theta = 2.0 * std::numbers::pi * Rational(beta - Rational(b * k)).get_d() / static_cast<double>(a);
      worst = std::max(worst, std::abs(m[k] - std::polar(1.0, theta)));
      if (std::abs(m[k] - std::complex<double>(1.0, 0.0)) <= 1e-12) ++ones;
    }
    if (is_integer(beta))
      out.require(ones == 1, "integer beta " + to_string(beta) + " gives " + std::to_string(ones) + " unit eigenvalues");
  }
  out.require(worst <= 1e-12, "eigenvalue error " + std::to_string(worst));
  out.detail << "30 random (a, b, beta), max error " << worst;
}

// First m whose ratio c_m / c_{m-1} passes the threshold from then on.
std::int64_t crossing(const std::vector<double>& r, bool below, double threshold) {
  std::int64_t m = static_cast<std::int64_t>(r.size());
  for (std::int64_t i = m - 1; i >= 0; --i) {
    bool ok = below ? r[i] < threshold : r[i] > threshold;
    if (!ok) break;
    m = i;
  }
  return m + 1;
}

void ratio_test(Outcome& out) {
  const std::int64_t a = 2, b = 3, M = 100, horizon = 250;
  std::int64_t generic_from = 0, axis_from = 0;
  double generic_max = 0.0, axis_min = 1e300;
  for (const char* beta : {"1/2", "7/11", "-4/3"}) {
    for (const auto& f : generic_basis(a, b, rat(beta), horizon)) {
      auto r = ratio_sequence(f, std::get<RayTrunc>(f.trunc()));
      generic_max = std::max(generic_max, r[M - 1]);
      generic_from = std::max(generic_from, crossing(r, true, 1e-3));
      out.require(r[M - 1] < 1e-3, "");
    }
    for (const auto& f : axis_basis(a, b, rat(beta), horizon)) {
      auto r = ratio_sequence(f, std::get<RayTrunc>(f.trunc()));
      axis_min = std::min(axis_min, r[M - 1]);
      axis_from = std::max(axis_from, crossing(r, false, 1e3));
      out.require(r[M - 1] > 1e3, "");
    }
  }
  out.detail.str("");
  out.detail << "at m=100: max generic ratio " << generic_max << ", min axis ratio " << axis_min
             << "; thresholds hold from m=" << generic_from << " (generic) and m=" << axis_from << " (axis)";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "annihilation of the axis and generic bases", 10, annihilation},
      {2, "P E = (E + ab) P", 0, commutation},
      {3, "Gevrey index b/a and slope gap", 30, gevrey_index},
      {4, "resonant case beta = 8", 0, resonant_case},
      {5, "recurrence round trip", 0, recurrence_round_trip},
      {6, "lambda extraction", 0, lambda_extraction},
      {7, "dimension oracle", 60, dimension_oracle},
      {8, "monodromy eigenvalues", 0, monodromy},
      {9, "d'Alembert ratios at m = 100", 0, ratio_test},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0)
      out.require(secs < c.time_limit, "runtime " + std::to_string(secs) + " s over " +
                                           std::to_string(c.time_limit) + " s");
    std::cout << (out.passed ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ("
              << out.detail.str() << ", " << secs << " s)\n";
    all_ok = all_ok && out.passed;
  }
  return all_ok ? 0 : 1;
}
