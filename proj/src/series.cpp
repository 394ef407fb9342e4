#include "gkz/series.hpp"

#include <cmath>
#include <sstream>

#include "gkz/errors.hpp"

namespace gkz {

ExponentPair operator+(const ExponentPair& l, const ExponentPair& r) {
  return {Rational(l.e1 + r.e1), Rational(l.e2 + r.e2)};
}

ExponentPair operator-(const ExponentPair& l, const ExponentPair& r) {
  return {Rational(l.e1 - r.e1), Rational(l.e2 - r.e2)};
}

ExponentPair operator*(const Rational& s, const ExponentPair& e) {
  return {Rational(s * e.e1), Rational(s * e.e2)};
}

ExponentPair to_exponent(const IntPair& u) {
  return {Rational(static_cast<long>(u[0])), Rational(static_cast<long>(u[1]))};
}

Rational RayTrunc::bound() const {
  int i = axis();
  const Rational& base = i == 0 ? v.e1 : v.e2;
  return base + Rational(static_cast<long>(u[i])) * static_cast<long>(M);
}

bool within(const TruncationSpec& t, const ExponentPair& e) {
  return std::visit(
      [&](const auto& spec) -> bool {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ExactTrunc>) {
          return true;
        } else if constexpr (std::is_same_v<T, RayTrunc>) {
          const Rational& coord = spec.axis() == 0 ? e.e1 : e.e2;
          return coord <= spec.bound();
        } else {
          if (!is_natural(e.e1) || !is_natural(e.e2)) return false;
          return e.e1 <= spec.N1 && e.e2 <= spec.N2;
        }
      },
      t);
}

SparseSeries::SparseSeries(Terms terms, TruncationSpec trunc) : trunc_(std::move(trunc)) {
  for (auto& [e, c] : terms) {
    if (c != 0 && within(trunc_, e)) terms_.emplace(e, std::move(c));
  }
}

SparseSeries SparseSeries::monomial(const Rational& c, const ExponentPair& e,
                                    TruncationSpec trunc) {
  Terms t;
  t.emplace(e, c);
  return SparseSeries(std::move(t), std::move(trunc));
}

TruncationSpec intersect(const TruncationSpec& a, const TruncationSpec& b) {
  if (std::holds_alternative<ExactTrunc>(a)) return b;
  if (std::holds_alternative<ExactTrunc>(b)) return a;
  if (a.index() != b.index())
    throw Error(ErrorCode::IncompatibleTruncation, "ray and box truncations cannot be mixed");
  if (const auto* ra = std::get_if<RayTrunc>(&a)) {
    const auto& rb = std::get<RayTrunc>(b);
    if (ra->u != rb.u)
      throw Error(ErrorCode::IncompatibleTruncation, "ray series with different directions");
    return ra->bound() <= rb.bound() ? a : b;
  }
  const auto& ba = std::get<BoxTrunc>(a);
  const auto& bb = std::get<BoxTrunc>(b);
  return BoxTrunc{std::min(ba.N1, bb.N1), std::min(ba.N2, bb.N2)};
}

SparseSeries linear_combine(const std::vector<std::pair<Rational, SparseSeries>>& pairs) {
  if (pairs.empty()) return SparseSeries();
  TruncationSpec trunc = pairs.front().second.trunc();
  for (std::size_t i = 1; i < pairs.size(); ++i) trunc = intersect(trunc, pairs[i].second.trunc());

  SparseSeries::Terms acc;
  for (const auto& [scale, f] : pairs) {
    if (scale == 0) continue;
    for (const auto& [e, c] : f.terms()) {
      auto [it, inserted] = acc.try_emplace(e, 0);
      it->second += scale * c;
    }
  }
  return SparseSeries(std::move(acc), std::move(trunc));
}

Rational coeff_at(const SparseSeries& f, const ExponentPair& e) {
  auto it = f.terms().find(e);
  return it == f.terms().end() ? Rational(0) : it->second;
}

bool within_truncation(const SparseSeries& f, const ExponentPair& e) {
  return within(f.trunc(), e);
}

FloatSeries::FloatSeries(Terms terms, TruncationSpec trunc) : trunc_(std::move(trunc)) {
  for (auto& [e, c] : terms) {
    if (!std::isfinite(c))
      throw Error(ErrorCode::InvalidArgument, "non-finite coefficient at " + to_string(e));
    if (c != 0.0 && within(trunc_, e)) terms_.emplace(e, c);
  }
}

double FloatSeries::coeff_at(const ExponentPair& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

FloatSeries to_float(const SparseSeries& f) {
  FloatSeries::Terms t;
  for (const auto& [e, c] : f.terms()) t.emplace(e, c.get_d());
  return FloatSeries(std::move(t), f.trunc());
}

nlohmann::json to_json(const TruncationSpec& t) {
  return std::visit(
      [](const auto& spec) -> nlohmann::json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ExactTrunc>) {
          return {{"kind", "exact"}};
        } else if constexpr (std::is_same_v<T, RayTrunc>) {
          return {{"kind", "ray"},
                  {"M", spec.M},
                  {"v", {to_string(spec.v.e1), to_string(spec.v.e2)}},
                  {"u", {spec.u[0], spec.u[1]}},
                  {"offset", spec.offset}};
        } else {
          return {{"kind", "box"}, {"N1", spec.N1}, {"N2", spec.N2}};
        }
      },
      t);
}

TruncationSpec truncation_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact") return ExactTrunc{};
  if (kind == "box") return BoxTrunc{j.at("N1").get<std::int64_t>(), j.at("N2").get<std::int64_t>()};
  if (kind == "ray") {
    RayTrunc r;
    r.M = j.at("M").get<std::int64_t>();
    r.v = {parse_rational(j.at("v").at(0).get<std::string>()),
           parse_rational(j.at("v").at(1).get<std::string>())};
    r.u = {j.at("u").at(0).get<std::int64_t>(), j.at("u").at(1).get<std::int64_t>()};
    r.offset = j.value("offset", std::int64_t{0});
    return r;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown truncation kind '" + kind + "'");
}

nlohmann::json to_json(const SparseSeries& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back({{"e1", to_string(e.e1)}, {"e2", to_string(e.e2)}, {"c", to_string(c)}});
  return {{"terms", std::move(terms)}, {"truncation", to_json(f.trunc())}};
}

SparseSeries series_from_json(const nlohmann::json& j) {
  SparseSeries::Terms terms;
  for (const auto& t : j.at("terms")) {
    ExponentPair e{parse_rational(t.at("e1").get<std::string>()),
                   parse_rational(t.at("e2").get<std::string>())};
    terms[e] += parse_rational(t.at("c").get<std::string>());
  }
  return SparseSeries(std::move(terms), truncation_from_json(j.at("truncation")));
}

std::string to_string(const ExponentPair& e) {
  return "(" + to_string(e.e1) + ", " + to_string(e.e2) + ")";
}

namespace {

void append_power(std::ostringstream& os, const char* var, const Rational& e, bool& first) {
  if (e == 0) return;
  if (!first) os << "*";
  first = false;
  os << var;
  if (e == 1) return;
  if (is_integer(e) && sgn(e) > 0)
    os << "^" << to_string(e);
  else
    os << "^(" << to_string(e) << ")";
}

}  // namespace

std::string to_string(const SparseSeries& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [e, c] : f.terms()) {
    Rational mag = abs(c);
    if (first_term) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first_term = false;
    bool first = true;
    bool constant = e.e1 == 0 && e.e2 == 0;
    if (mag != 1 || constant) {
      os << to_string(mag);
      first = false;
    }
    append_power(os, "x1", e.e1, first);
    append_power(os, "x2", e.e2, first);
  }
  return os.str();
}

}  // namespace gkz
