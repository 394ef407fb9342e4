#pragma once

#include <string>

#include "gkz/series.hpp"

namespace testing {

inline gkz::Rational q(const char* s) { return gkz::parse_rational(s); }

inline gkz::ExponentPair ep(const char* e1, const char* e2) { return {q(e1), q(e2)}; }

inline gkz::SparseSeries mono(const char* c, const char* e1, const char* e2,
                              gkz::TruncationSpec t = gkz::ExactTrunc{}) {
  return gkz::SparseSeries::monomial(q(c), ep(e1, e2), std::move(t));
}

inline gkz::SparseSeries sum(std::initializer_list<gkz::SparseSeries> parts) {
  std::vector<std::pair<gkz::Rational, gkz::SparseSeries>> v;
  for (const auto& p : parts) v.emplace_back(gkz::Rational(1), p);
  return gkz::linear_combine(v);
}

}  // namespace testing
