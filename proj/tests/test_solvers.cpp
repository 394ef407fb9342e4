#include <doctest.h>

#include <cmath>

#include "gkz/errors.hpp"
#include "gkz/gamma_series.hpp"
#include "gkz/gevrey.hpp"
#include "gkz/solvers.hpp"
#include "gkz/weyl.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gkz;
using testing::ep;
using testing::mono;
using testing::q;

namespace {

ResidueClassSeries spike(std::int64_t k, std::int64_t r0, std::int64_t a, std::int64_t b,
                         const Rational& beta, std::int64_t M, const Rational& value = 1) {
  ResidueClassSeries f{k, class_exponent(k, a, b, beta) - b, std::vector<Rational>(M + 1, Rational(0))};
  f.coeffs[r0] = value;
  return f;
}

}  // namespace

TEST_CASE("base_point_rejects_zero") {
  CHECK_THROWS_AS(BasePoint(Rational(0)), Error);
  CHECK(BasePoint(q("-2/3")).epsilon() == q("-2/3"));
}

TEST_CASE("decompose_vw_example") {
  auto f = testing::sum({mono("1", "0", "0"), mono("1", "3", "0"), mono("1", "0", "2"), mono("1", "1", "1")});
  auto [v, w] = decompose_VW(f, 2, 3, Rational(6));
  CHECK(w == testing::sum({mono("1", "3", "0"), mono("1", "0", "2")}));
  CHECK(v == testing::sum({mono("1", "0", "0"), mono("1", "1", "1")}));
  auto [v2, w2] = decompose_VW(f, 2, 3, q("1/2"));
  CHECK(w2.is_zero());
  CHECK(v2 == f);
  auto [v0, w0] = decompose_VW(SparseSeries(), 2, 3, Rational(6));
  CHECK(v0.is_zero());
  CHECK(w0.is_zero());
  CHECK_THROWS_AS(decompose_VW(mono("1", "1/2", "0"), 2, 3, Rational(1)), Error);
}

TEST_CASE("invert_e_at_origin") {
  auto f = invert_E_origin(mono("1", "1", "1"), 2, 3, q("1/2"));
  CHECK(coeff_at(f, ep("1", "1")) == q("2/9"));
  CHECK(invert_E_origin(SparseSeries(), 2, 3, q("1/2")).is_zero());
  try {
    invert_E_origin(mono("1", "3", "0"), 2, 3, Rational(6));
    FAIL("expected ResonantTerm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResonantTerm);
  }
}

TEST_CASE("invert_e_round_trip_on_random_v_parts") {
  auto [P, E] = hypergeometric_ops(2, 3, Rational(7));
  for (int trial = 0; trial < 20; ++trial) {
    SparseSeries::Terms t;
    for (int n = 0; n < 6; ++n)
      t[{Rational(oracle::uniform(0, 6)), Rational(oracle::uniform(0, 6))}] += oracle::random_rational();
    auto [v, w] = decompose_VW(SparseSeries(t, ExactTrunc{}), 2, 3, Rational(7));
    CHECK(apply(E, invert_E_origin(v, 2, 3, Rational(7))) == v);
  }
}

TEST_CASE("surject_p_on_w") {
  CHECK(surject_P_on_W(SparseSeries(), 2, 3, Rational(1)).is_zero());
  auto g = surject_P_on_W(mono("5", "0", "0"), 1, 2, Rational(2));
  auto [P, E] = hypergeometric_ops(1, 2, Rational(2));
  CHECK(apply(P, g) == mono("5", "0", "0"));
  for (const auto& [e, c] : g.terms()) CHECK(e.e1 + 2 * e.e2 == 2);
  try {
    surject_P_on_W(mono("1", "1", "0"), 1, 2, Rational(2));
    FAIL("expected NotInTargetStratum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInTargetStratum);
  }
}

TEST_CASE("surject_p_round_trip_on_random_strata") {
  for (auto [a, b] : {std::pair{2, 3}, {1, 2}, {2, 5}, {3, 4}}) {
    for (int beta = a * b; beta < a * b + 20; ++beta) {
      auto target = weight_stratum(a, b, Rational(beta - a * b));
      if (target.empty()) continue;
      SparseSeries::Terms t;
      for (const auto& e : target) t[e] = oracle::random_rational();
      SparseSeries h2(t, ExactTrunc{});
      auto g = surject_P_on_W(h2, a, b, Rational(beta));
      auto [P, E] = hypergeometric_ops(a, b, Rational(beta));
      CHECK(apply(P, g) == h2);
      CHECK(apply(E, g).is_zero());
    }
  }
}

TEST_CASE("solve_ep_local_hand_values") {
  BasePoint p(Rational(1));
  BoxTrunc box{6, 3};
  auto g = mono("1", "0", "0", box);
  auto h = solve_Ep_local(g, p, 2, 3, q("1/2"), box);
  CHECK(coeff_at(h, ep("0", "0")) == 0);
  CHECK(coeff_at(h, ep("1", "0")) == q("1/2"));
  CHECK(coeff_at(h, ep("2", "0")) == q("-3/16"));
  CHECK(solve_Ep_local(SparseSeries(box), p, 2, 3, q("1/2"), box).is_zero());
}

TEST_CASE("solve_ep_local_round_trip") {
  for (int trial = 0; trial < 15; ++trial) {
    BasePoint p(oracle::random_rational() + q("1/7"));
    std::int64_t a = 2;
    std::int64_t b = 3;
    Rational beta = oracle::random_rational();
    BoxTrunc box{7, 5};
    SparseSeries::Terms t;
    for (int n = 0; n < 6; ++n)
      t[{Rational(oracle::uniform(0, 7)), Rational(oracle::uniform(0, 5))}] += oracle::random_rational();
    SparseSeries g(t, box);
    auto h = solve_Ep_local(g, p, a, b, beta, box);
    auto Ep = euler_at_point(a, b, beta, p.epsilon());
    CHECK(linear_combine({{Rational(1), apply(Ep, h)}, {Rational(-1), g}}).is_zero());
  }
}

TEST_CASE("local_coordinates_expand_binomially") {
  BasePoint p(Rational(2));
  auto f = to_local_coordinates(mono("1", "2", "1"), p, {4, 4});
  CHECK(coeff_at(f, ep("0", "1")) == 4);
  CHECK(coeff_at(f, ep("1", "1")) == 4);
  CHECK(coeff_at(f, ep("2", "1")) == 1);
  CHECK(coeff_at(f, ep("3", "1")) == 0);
  auto g = to_local_coordinates(mono("1", "1/2", "0"), BasePoint(Rational(1)), {3, 0});
  CHECK(coeff_at(g, ep("2", "0")) == q("-1/8"));
  CHECK_THROWS_AS(to_local_coordinates(mono("1", "1/2", "0"), p, {3, 0}), Error);
}

TEST_CASE("recurrence_with_zero_input_is_zero") {
  auto h = solve_P_recurrence({}, 2, 3, q("1/2"), BasePoint(Rational(1)), 20);
  REQUIRE(h.size() == 2);
  for (const auto& c : h)
    for (const auto& v : c.coeffs) CHECK(v == 0);
}

TEST_CASE("homogeneous_recurrence_regenerates_gamma_coefficients") {
  const Rational beta = q("1/2");
  std::vector<Rational> seeds{Rational(1), Rational(1)};
  auto h = solve_P_recurrence({}, 2, 3, beta, BasePoint(Rational(1)), 10, seeds);
  auto v = exponents_along_Y(2, 3, beta);
  for (std::int64_t k = 0; k < 2; ++k)
    for (std::int64_t m = 0; m <= 10; ++m)
      CHECK(h[k].coeffs[m] / h[k].coeffs[0] == oracle::gamma(v[k].e1, v[k].e2, -3 * m, 2 * m));
}

TEST_CASE("closed_form_matches_iterated_recurrence") {
  for (int trial = 0; trial < 20; ++trial) {
    std::int64_t a = oracle::uniform(1, 3);
    std::int64_t b = a + 1 + 2 * oracle::uniform(0, 1);
    if (std::gcd(a, b) != 1) continue;
    Rational beta = oracle::random_rational(9, 5);
    if (resonance_data(a, b, beta) || is_integer(beta)) beta += q("1/7");
    std::int64_t k = oracle::uniform(0, a - 1);
    ResidueClassSeries f{k, class_exponent(k, a, b, beta) - b, {}};
    for (int m = 0; m <= 8; ++m) f.coeffs.push_back(oracle::random_rational());
    auto h = solve_P_recurrence({f}, a, b, beta, BasePoint(Rational(1)), 8)[k];
    auto c = explicit_recurrence_solution(f, a, b, beta, 8);
    for (std::int64_t m = 0; m <= 8; ++m) CHECK(h.coeffs[m] == c.coeffs[m]);
  }
}

TEST_CASE("recurrence_solves_p_and_e") {
  for (int trial = 0; trial < 10; ++trial) {
    std::int64_t a = 2;
    std::int64_t b = 3;
    Rational beta = oracle::random_rational() + q("1/5");
    std::vector<ResidueClassSeries> f;
    for (std::int64_t k = 0; k < a; ++k) {
      ResidueClassSeries c{k, class_exponent(k, a, b, beta) - b, {}};
      for (int m = 0; m <= 30; ++m) c.coeffs.push_back(oracle::uniform(0, 3) == 0 ? oracle::random_rational() : Rational(0));
      f.push_back(c);
    }
    auto h = solve_P_recurrence(f, a, b, beta, BasePoint(Rational(1)), 30);
    auto [P, E] = hypergeometric_ops(a, b, beta);
    for (std::int64_t k = 0; k < a; ++k) {
      auto hs = to_series(h[k], a, b);
      auto fs = to_series(f[k], a, b);
      CHECK(linear_combine({{Rational(1), apply(P, hs)}, {Rational(-1), fs}}).is_zero());
      CHECK(apply(E, hs).is_zero());
      CHECK(apply(E + DiffOperator::scalar(Rational(a * b)), fs).is_zero());
    }
  }
}

TEST_CASE("split_classes_inverts_to_series") {
  const Rational beta = q("1/2");
  ResidueClassSeries c0{0, class_exponent(0, 2, 3, beta) - 3, {q("1"), q("-2/3"), q("5")}};
  ResidueClassSeries c1{1, class_exponent(1, 2, 3, beta) - 3, {q("0"), q("7"), q("0")}};
  auto f = linear_combine({{Rational(1), to_series(c0, 2, 3)}, {Rational(1), to_series(c1, 2, 3)}});
  auto back = split_classes(f, 2, 3, beta, Rational(-3), 2);
  CHECK(back[0].coeffs == c0.coeffs);
  CHECK(back[1].coeffs[1] == 7);
  CHECK_THROWS_AS(split_classes(mono("1", "0", "0"), 2, 3, beta, Rational(-3), 2), Error);
}

TEST_CASE("lambda_of_zero_input") {
  auto l = extract_lambda(spike(0, 0, 2, 3, q("1/2"), 10, Rational(0)), 0, 2, 3, q("1/2"), Rational(1), 10);
  CHECK(l.lambda == 0.0);
  CHECK(l.tail_bound == 0.0);
}

TEST_CASE("lambda_frozen_values") {
  auto l0 = extract_lambda(spike(0, 0, 2, 3, q("1/2"), 10), 0, 2, 3, q("1/2"), Rational(1), 10);
  REQUIRE(l0.exact);
  CHECK(*l0.exact == q("-64/21"));
  auto l1 = extract_lambda(spike(1, 0, 2, 3, q("1/2"), 10), 1, 2, 3, q("1/2"), Rational(1), 10);
  CHECK(*l1.exact == q("64/585"));
}

TEST_CASE("lambda_of_spikes_matches_one_term_formula") {
  for (auto [a, b] : {std::pair{2, 3}, {1, 2}, {3, 5}}) {
    for (const char* beta : {"1/2", "-4/3", "7/5"}) {
      for (std::int64_t k = 0; k < a; ++k) {
        for (std::int64_t r0 : {0, 1, 3, 7}) {
          auto l = extract_lambda(spike(k, r0, a, b, q(beta), 40), k, a, b, q(beta), Rational(1), 40);
          Rational expect = oracle::spike_lambda(k, r0, a, b, q(beta));
          REQUIRE(l.exact);
          CHECK(*l.exact == expect);
          CHECK(std::fabs(l.lambda - expect.get_d()) <= 1e-10 * std::fabs(expect.get_d()));
        }
      }
    }
  }
}

TEST_CASE("lambda_preconditions") {
  auto f = spike(0, 0, 2, 3, q("1/2"), 10);
  try {
    extract_lambda(f, 0, 2, 3, q("1/2"), q("3/2"), 10);
    FAIL("expected NonGevreyInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonGevreyInput);
  }
  try {
    extract_lambda(spike(0, 0, 2, 3, Rational(8), 10), 0, 2, 3, Rational(8), Rational(1), 10);
    FAIL("expected ResonantClass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResonantClass);
  }
}

TEST_CASE("lambda_tail_bound_for_infinite_input") {
  // Gevrey-1 input f_r = 1 for all r: terms shrink like (ar)!/(gamma)_{b(r+1)}.
  ResidueClassSeries f{0, class_exponent(0, 2, 3, q("1/2")) - 3, std::vector<Rational>(60, Rational(1))};
  auto short_sum = extract_lambda(f, 0, 2, 3, q("1/2"), Rational(1), 20);
  auto long_sum = extract_lambda(f, 0, 2, 3, q("1/2"), Rational(1), 59);
  CHECK_FALSE(short_sum.exact);
  CHECK(short_sum.tail_bound > 0.0);
  CHECK(std::fabs(short_sum.lambda - long_sum.lambda) <= short_sum.tail_bound * 1.01 + 1e-15);
}

TEST_CASE("spike_solution_minus_lambda_phi_is_tame") {
  const std::int64_t M = 200;
  for (std::int64_t k = 0; k < 2; ++k) {
    auto f = spike(k, 2, 2, 3, q("1/2"), M);
    auto h = solve_P_recurrence({f}, 2, 3, q("1/2"), BasePoint(Rational(1)), M)[k];
    auto lam = extract_lambda(f, k, 2, 3, q("1/2"), Rational(1), M);
    auto G = gamma_coefficients(exponents_along_Y(2, 3, q("1/2"))[k], axis_direction(2, 3), M);
    for (std::size_t m = 0; m < h.coeffs.size(); ++m) h.coeffs[m] -= *lam.exact * G[m];
    auto r = estimate_gevrey_index(to_series(h, 2, 3));
    CHECK(r.estimated_index <= 1.1);
  }
}

TEST_CASE("recurrence_output_grows_like_gevrey_b_over_a") {
  ResidueClassSeries f{0, class_exponent(0, 2, 3, q("1/2")) - 3, {}};
  for (int m = 0; m <= 200; ++m) f.coeffs.push_back(Rational(m % 3 + 1));
  auto h = solve_P_recurrence({f}, 2, 3, q("1/2"), BasePoint(Rational(1)), 200)[0];
  auto r = estimate_gevrey_index(to_series(h, 2, 3));
  CHECK(r.estimated_index == doctest::Approx(1.5).epsilon(0.05 / 1.5));
}

TEST_CASE("resonant_class_rebuilds_vtilde_series") {
  auto rd = resonance_data(2, 3, Rational(8));
  auto [P, E] = hypergeometric_ops(2, 3, Rational(8));
  auto vt = build_vtilde_series(*rd, 2, 3, Rational(8), 40);
  auto f = apply(P, vt);
  auto cls = split_classes(f, 2, 3, Rational(8), Rational(-3), 42);
  auto h = solve_resonant_class(cls[0], *rd, 2, 3, Rational(8), 42);
  for (std::int64_t m = 0; m <= rd->m0 / 3; ++m) CHECK(h.coeffs[m] == 0);
  for (const auto& [e, c] : vt.terms()) CHECK(coeff_at(to_series(h, 2, 3), e) == c);
  auto lam = extract_lambda_resonant(cls[0], *rd, 2, 3, Rational(8), Rational(1), 42);
  REQUIRE(lam.exact);
  CHECK(*lam.exact == 1);
}
