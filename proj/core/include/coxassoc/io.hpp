#pragma once

// Serialization: Coxeter matrix JSON input, lattice JSON/DOT emission,
// polytope JSON/OFF emission, and the classification reports.
// All floating-point output is rounded to 12 significant digits and all
// orderings are deterministic, so identical inputs give identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "coxassoc/isometry.hpp"

namespace coxassoc {

struct MatrixInput {
  CoxeterMatrix m;
  std::vector<std::string> labels;  // empty when the file gives none
};

/// Parses {"labels": [...], "m": [[...]]}; labels are optional.
/// Throws InvalidConfig on malformed JSON.
MatrixInput parse_matrix_json(const std::string& text);

/// "balanced" or a comma-separated list of positive rationals ("1,2,3"
/// or "1/2,1,3/4").  Throws InvalidConfig on bad input.
std::vector<double> parse_kappa(const std::string& text, int rank);

double round_sig(double x, int digits = 12);

std::string lattice_to_json(const CoxeterSystem& sys, const Word& c,
                            const SingletonLattice& lattice);
std::string lattice_to_dot(const CoxeterSystem& sys, const Word& c,
                           const SingletonLattice& lattice);

std::string polytope_to_json(const Polytope& poly, const BasePoint& u, const std::string& kind,
                             const std::optional<Word>& c = std::nullopt);

/// OFF mesh (rank <= 3 only; rank-2 polygons are embedded at z = 0).
/// Coordinates are emitted in an orthonormal frame (Cholesky transform
/// of the Gram matrix) so viewers show the true shape.
std::string polytope_to_off(const Polytope& poly);

struct InspectData {
  const CoxeterSystem* sys;
  std::optional<std::size_t> group_order;
  Word w0_word;
  std::vector<CoxeterElement> coxeter_elts;
  std::vector<GraphAutomorphism> automorphisms;
};
std::string inspect_to_json(const InspectData& data);

struct ClassifyReport {
  const CoxeterSystem* sys;
  BasePoint u;
  double epsilon;
  Classification assoc;
  Classification fans;
  bool fan_asserted;  // kappa_s == kappa_{w0 s w0} for all s
  std::optional<bool> oracle_agreement;
  int counterexample_a = -1;
  int counterexample_b = -1;
  double runtime_ms = 0;
};
std::string classify_report_to_json(const ClassifyReport& report);

std::string reducible_report_to_json(const CoxeterSystem& sys, const BasePoint& u, double epsilon,
                                     const ReducibleReport& report);

}  // namespace coxassoc
