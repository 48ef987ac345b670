#pragma once

#include <string>
#include <vector>

#include "qtorus/coeff.hpp"
#include "qtorus/commutation.hpp"
#include "qtorus/lattice.hpp"

namespace qtorus {

enum class CenterKind { laurent_series, power_series, unknown_form };

struct CenterDescription {
  CenterKind kind = CenterKind::unknown_form;
  std::vector<ExponentVector> generators;  // exponents of the z_i; empty if unknown

  bool operator==(const CenterDescription&) const = default;
};

struct StructureReport {
  // input echo, entries reduced mod ell
  i64 n = 0;
  i64 ell = 1;
  IntMat h;

  i64 pi_degree = 1;
  i64 image_cardinality = 1;
  IntMat s_basis;  // HNF rows
  std::vector<i64> lambdas;
  bool positive_diagonal = false;
  CenterDescription center_of_l;
  CenterDescription center_of_r;
  i64 azumaya_degree = 1;  // theorem-derived label, not separately verified
  bool ufr_l = false;  // true means the sufficient criterion holds, false means "criterion not met"
  bool ufr_r = false;
  std::vector<std::string> warnings;

  bool operator==(const StructureReport&) const = default;
};

struct AnalysisConfig {
  i64 n = 0;
  i64 ell = 1;
  IntMat h;
  FieldSpec field;
  std::string name;                // optional, echoed nowhere
  std::vector<std::string> notes;  // optional free-form corpus notes
};

// Full pipeline: validate, analyze the central lattice, decide the
// positive-diagonal criterion, and derive the structural verdicts. The
// internal cross-checks are always on.
inline StructureReport analyze(const AnalysisConfig& cfg) {
  StructureReport rep;
  CommutationData cd = CommutationData::validate(cfg.n, cfg.ell, cfg.h, &rep.warnings);
  CoeffField field(FieldSpec{cfg.field.kind, cd.ell(), cfg.field.p});  // validates the field spec
  (void)field;

  LatticeBasis basis = kernel_lattice(cd);
  i64 h = image_cardinality(cd);
  i64 d = pi_degree(cd);
  DiagonalVerdict verdict = positive_diagonal_decision(cd);

  if (d * d != h) throw InternalError("pi degree squared does not equal the image cardinality");
  for (i64 i = 0; i < basis.n(); ++i)
    if (!in_kernel(cd, basis.rows().row(i)))
      throw InternalError("central lattice basis row " + std::to_string(i + 1) +
                          " is outside the kernel");
  if (basis.index() != h)
    throw InternalError("lattice index does not match the image cardinality");
  if (verdict.is_positive_diagonal) {
    for (i64 i = 0; i < basis.n(); ++i)
      for (i64 j = 0; j < basis.n(); ++j) {
        i64 expect = i == j ? verdict.lambdas[static_cast<size_t>(i)] : 0;
        if (basis.rows()(i, j) != expect)
          throw InternalError("positive-diagonal verdict with a non-diagonal HNF basis");
      }
  }

  rep.n = cd.n();
  rep.ell = cd.ell();
  rep.h = cd.h();
  rep.pi_degree = d;
  rep.image_cardinality = h;
  rep.s_basis = basis.rows();
  rep.lambdas = verdict.lambdas;
  rep.positive_diagonal = verdict.is_positive_diagonal;
  rep.azumaya_degree = d;
  rep.ufr_l = verdict.is_positive_diagonal;
  rep.ufr_r = verdict.is_positive_diagonal;
  if (verdict.is_positive_diagonal) {
    std::vector<ExponentVector> gens;
    for (i64 i = 0; i < basis.n(); ++i) gens.push_back(basis.rows().row(i));
    rep.center_of_l = {CenterKind::laurent_series, gens};
    rep.center_of_r = {CenterKind::power_series, std::move(gens)};
  } else {
    rep.center_of_l = {CenterKind::unknown_form, {}};
    rep.center_of_r = {CenterKind::unknown_form, {}};
    rep.warnings.push_back(
        "positive-diagonal criterion not met: no series-ring description of the centers is "
        "produced, and the UFR flags mean only that the sufficient criterion failed");
  }
  return rep;
}

}  // namespace qtorus
