#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkz/gevrey.hpp"
#include "gkz/linalg.hpp"
#include "gkz/series.hpp"
#include "gkz/solvers.hpp"

namespace gkz {

/// The origin (nullopt) or a base point p = (eps, 0) on Y.
using Locus = std::optional<BasePoint>;

std::string to_string(const Locus& p);

/// Coefficient sheaf of the Ext groups: Gevrey-s series along Y, or their
/// quotient by convergent series.
enum class Sheaf { GevreyS, QuotientS };
std::string to_string(Sheaf s);

struct JetIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;
};

/// psi0(h) = (P h, E h) and psi1(f1, f2) = (E + ab) f1 - P f2 on jets of
/// bidegree <= box, in x^alpha at the origin and in t1^i x2^j (x1 = t1 + eps)
/// at p. Rows exist only for output coefficients the box fully determines.
/// Columns of psi1 are the rows of psi0 (P block first, then E block).
struct SolutionComplexMaps {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Rational beta;
  Locus point;
  BoxTrunc box;
  std::vector<JetIndex> domain;
  std::vector<JetIndex> p_rows;
  std::vector<JetIndex> e_rows;
  std::vector<JetIndex> psi1_rows;
  SparseMatrix psi0{0, 0};
  SparseMatrix psi1{0, 0};

  std::size_t domain_index(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(i * (box.N2 + 1) + j);
  }
};

/// Throws BoxTooSmall when psi1 would have no rows.
SolutionComplexMaps solution_complex_maps(std::int64_t a, std::int64_t b, const Rational& beta,
                                          const Locus& point, const BoxTrunc& box);

/// Elimination order used for psi0: highest t1-degree first at p.
std::vector<std::size_t> psi0_column_order(const SolutionComplexMaps& maps);

/// Dimension of ker(psi0) projected to coefficients with x2-degree <=
/// projection_degree. Requires projection_degree < box.N2 - a.
std::size_t jet_kernel_dim(const SolutionComplexMaps& maps, std::int64_t projection_degree);

/// box.N2 / 3.
std::int64_t default_projection_degree(const BoxTrunc& box);

struct ExtWitness {
  int degree = 0;
  std::string label;
  SparseSeries first;
  SparseSeries second;
};

struct ExtTable {
  Locus point;
  Sheaf sheaf = Sheaf::GevreyS;
  GevreyOrder s;
  std::array<std::size_t, 3> predicted{0, 0, 0};
  std::optional<std::array<std::size_t, 3>> measured;
  std::vector<ExtWitness> witnesses;
  /// Failed internal re-verifications; any entry makes the table a mismatch.
  std::vector<std::string> problems;

  bool match() const { return measured && *measured == predicted && problems.empty(); }
};

/// Dimensions stated by the theory for (beta, point, sheaf, s).
ExtTable predicted_ext_table(std::int64_t a, std::int64_t b, const Rational& beta,
                             const Locus& point, const GevreyOrder& s, Sheaf sheaf);

struct OracleOptions {
  BoxTrunc box{24, 24};
  /// Ray length of the series whose Gevrey index is estimated.
  std::int64_t M = 300;
  std::optional<std::int64_t> projection_degree;
  /// Fit residual (rms, log units) above which a classification is rejected.
  double max_fit_residual = 0.1;
};

/// Everything the oracle measures for one (a, b, beta, point, box, M),
/// independent of s and the sheaf. Building it does the expensive work.
class OracleContext {
 public:
  OracleContext(std::int64_t a, std::int64_t b, const Rational& beta, const Locus& point,
                const OracleOptions& opts = {});
  ~OracleContext();
  OracleContext(OracleContext&&) noexcept;

  ExtTable compare(const GevreyOrder& s, Sheaf sheaf) const;
  std::size_t kernel_dim() const;
  const SolutionComplexMaps& maps() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Both sides of the table. Contexts are cached per parameter set, so a sweep
/// over s and sheaves pays for the jet algebra once.
ExtTable compare_oracle_vs_theory(std::int64_t a, std::int64_t b, const Rational& beta,
                                  const Locus& point, const GevreyOrder& s, Sheaf sheaf,
                                  const OracleOptions& opts = {});

nlohmann::ordered_json to_json(const ExtTable& t);

struct MonodromySpectrum {
  std::vector<std::complex<double>> eigenvalues;
};

/// exp(2 pi i (beta - b k) / a), k = 0..a-1.
MonodromySpectrum monodromy_eigenvalues(std::int64_t a, std::int64_t b, const Rational& beta);

}  // namespace gkz
