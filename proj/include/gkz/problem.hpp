#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkz/ext_oracle.hpp"
#include "gkz/gevrey.hpp"
#include "gkz/series.hpp"

namespace gkz {

/// Input of every CLI command.
struct ProblemSpec {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Rational beta;
  Locus point = BasePoint(Rational(1));
  std::vector<GevreyOrder> s_values;
  std::int64_t M = 100;
  BoxTrunc box{24, 24};
  std::optional<std::int64_t> projection_degree;

  friend bool operator==(const ProblemSpec& l, const ProblemSpec& r);
};

std::vector<GevreyOrder> default_s_grid();

/// Line-oriented "key = value" text:
///   A = 2 3
///   beta = 1/2
///   point = 1            (or "origin")
///   s = 1, 5/4, inf
///   M = 100
///   box = 24 24
///   projection_degree = 8
/// "#" starts a comment. A and beta are required. Throws ParseError for
/// malformed text and ConstraintError for invalid values.
ProblemSpec parse_problem(std::string_view text);

/// Canonical text that parse_problem maps back to the same spec.
std::string render_problem(const ProblemSpec& spec);

}  // namespace gkz
