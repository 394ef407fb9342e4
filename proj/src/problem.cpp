#include "gkz/problem.hpp"

#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "gkz/errors.hpp"

namespace gkz {

bool operator==(const ProblemSpec& l, const ProblemSpec& r) {
  auto same_point = [](const Locus& x, const Locus& y) {
    return x.has_value() == y.has_value() && (!x || x->epsilon() == y->epsilon());
  };
  return l.a == r.a && l.b == r.b && l.beta == r.beta && same_point(l.point, r.point) &&
         l.s_values == r.s_values && l.M == r.M && l.box == r.box &&
         l.projection_degree == r.projection_degree;
}

std::vector<GevreyOrder> default_s_grid() {
  std::vector<GevreyOrder> out;
  for (const char* s : {"1", "9/8", "5/4", "11/8", "3/2", "7/4", "2"})
    out.emplace_back(parse_rational(s));
  return out;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Splits on whitespace and commas; columns are 1-based.
std::vector<Token> tokens(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_space(line[i]) || line[i] == ',') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i]) && line[i] != ',') ++i;
    out.push_back({std::string(line.substr(start, i - start)), offset + start + 1});
  }
  return out;
}

Rational rational_at(const Token& t, std::size_t line) {
  try {
    return parse_rational(t.text);
  } catch (const ParseError&) {
    throw ParseError(line, t.column, "expected an exact fraction, got '" + t.text + "'");
  }
}

std::int64_t integer_at(const Token& t, std::size_t line) {
  Rational r = rational_at(t, line);
  if (!is_integer(r) || !r.get_num().fits_slong_p())
    throw ParseError(line, t.column, "expected an integer, got '" + t.text + "'");
  return r.get_num().get_si();
}

void expect_count(const std::vector<Token>& v, std::size_t n, std::size_t line,
                  std::size_t column, const std::string& key) {
  if (v.size() != n)
    throw ParseError(line, v.size() > n ? v[n].column : column,
                     key + " takes " + std::to_string(n) + " value(s)");
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  ProblemSpec spec;
  bool s_given = false;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, first + 1, "expected 'key = value'");
    std::string_view key = line.substr(first, eq - first);
    while (!key.empty() && is_space(key.back())) key.remove_suffix(1);
    std::string k(key);
    if (!seen.insert(k).second) throw ParseError(line_no, first + 1, "duplicate key '" + k + "'");
    auto vals = tokens(line.substr(eq + 1), eq + 1);
    if (vals.empty()) throw ParseError(line_no, eq + 2, "missing value for '" + k + "'");

    if (k == "A") {
      expect_count(vals, 2, line_no, eq + 2, k);
      spec.a = integer_at(vals[0], line_no);
      spec.b = integer_at(vals[1], line_no);
    } else if (k == "beta") {
      expect_count(vals, 1, line_no, eq + 2, k);
      spec.beta = rational_at(vals[0], line_no);
    } else if (k == "point") {
      expect_count(vals, 1, line_no, eq + 2, k);
      if (vals[0].text == "origin") {
        spec.point.reset();
      } else {
        Rational eps = rational_at(vals[0], line_no);
        if (eps == 0) throw Error(ErrorCode::ConstraintError, "epsilon != 0 (point must lie off the origin)");
        spec.point = BasePoint(eps);
      }
    } else if (k == "s") {
      s_given = true;
      for (const auto& t : vals) {
        if (t.text == "inf") {
          spec.s_values.push_back(GevreyOrder::infinity());
          continue;
        }
        Rational s = rational_at(t, line_no);
        if (s < 1) throw Error(ErrorCode::ConstraintError, "s >= 1 (got " + t.text + ")");
        spec.s_values.emplace_back(s);
      }
    } else if (k == "M") {
      expect_count(vals, 1, line_no, eq + 2, k);
      spec.M = integer_at(vals[0], line_no);
    } else if (k == "box") {
      expect_count(vals, 2, line_no, eq + 2, k);
      spec.box = BoxTrunc{integer_at(vals[0], line_no), integer_at(vals[1], line_no)};
    } else if (k == "projection_degree") {
      expect_count(vals, 1, line_no, eq + 2, k);
      spec.projection_degree = integer_at(vals[0], line_no);
    } else {
      throw ParseError(line_no, first + 1, "unknown key '" + k + "'");
    }
  }
  if (!seen.contains("A")) throw ParseError(line_no, 1, "missing required key 'A'");
  if (!seen.contains("beta")) throw ParseError(line_no, 1, "missing required key 'beta'");
  if (spec.a <= 0 || spec.b <= 0) throw Error(ErrorCode::ConstraintError, "a, b > 0");
  if (spec.a >= spec.b) throw Error(ErrorCode::ConstraintError, "a < b");
  if (std::gcd(spec.a, spec.b) != 1) throw Error(ErrorCode::ConstraintError, "gcd(a, b) = 1");
  if (spec.M < 1) throw Error(ErrorCode::ConstraintError, "M >= 1");
  if (spec.box.N1 < 0 || spec.box.N2 < 0) throw Error(ErrorCode::ConstraintError, "box >= 0");
  if (spec.projection_degree && *spec.projection_degree < 0)
    throw Error(ErrorCode::ConstraintError, "projection_degree >= 0");
  if (!s_given) spec.s_values = default_s_grid();
  return spec;
}

std::string render_problem(const ProblemSpec& spec) {
  std::ostringstream os;
  os << "A = " << spec.a << " " << spec.b << "\n";
  os << "beta = " << to_string(spec.beta) << "\n";
  os << "point = " << (spec.point ? to_string(spec.point->epsilon()) : std::string("origin")) << "\n";
  os << "s =";
  for (std::size_t i = 0; i < spec.s_values.size(); ++i)
    os << (i ? ", " : " ") << to_string(spec.s_values[i]);
  os << "\n";
  os << "M = " << spec.M << "\n";
  os << "box = " << spec.box.N1 << " " << spec.box.N2 << "\n";
  if (spec.projection_degree) os << "projection_degree = " << *spec.projection_degree << "\n";
  return os.str();
}

}  // namespace gkz
