#pragma once

// Explicit isometries between associahedra, the isometry classification
// of Coxeter elements, the reducible-case identities, and an
// independent brute-force congruence oracle for cross-checking the
// classification geometrically.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxassoc/geometry.hpp"

namespace coxassoc {

struct LinearIsometry {
  enum class Provenance { PhiMu, ElementAction, Composition, Oracle };
  std::vector<double> matrix;  // rank x rank, row-major, simple-root coordinates
  Provenance provenance = Provenance::Oracle;
  std::string detail;  // e.g. "phi_mu{s1->s3,s2->s2,s3->s1}", "g", "g*phi_mu{...}"
};

/// The map a_s -> a_{mu(s)}: the permutation matrix of mu in simple-root
/// coordinates.  It also sends v_s to v_{mu(s)}.
LinearIsometry automorphism_isometry(const CoxeterSystem& sys, const GraphAutomorphism& mu);

/// The matrix of w acting on V.  element_isometry(w0) is the map that
/// fixes the apex polytope setwise and swaps M(e) with M(w0).
LinearIsometry element_isometry(const GroupElement& w, const std::string& detail = "g");

/// M^T G M == G entrywise within eps.
bool is_gram_orthogonal(const CoxeterSystem& sys, const std::vector<double>& m,
                        double eps = kDefaultEpsilon);

/// kappa_s == kappa_{mu(s)} for all s.
bool is_u_automorphism(const GraphAutomorphism& mu, const BasePoint& u);

/// Image of a labeled halfspace under phi_mu for a u-valid mu: the
/// halfspace labeled (mu(x), mu(s)).  Throws LabelGeometryMismatch when
/// the label image and the geometric image disagree (an implementation
/// bug or a non-u-valid mu).
Halfspace transport_halfspace(const CoxeterSystem& sys, const GraphAutomorphism& mu,
                              const Halfspace& h, const BasePoint& u);

struct IsometryClass {
  std::vector<int> members;  // indices into Classification::coxeter_elts
  struct Witness {
    int from;
    int to;
    LinearIsometry iso;  // sends Ass_{c_from} onto Ass_{c_to}
  };
  std::vector<Witness> witnesses;
};

struct Classification {
  std::vector<CoxeterElement> coxeter_elts;  // sorted by canonical word
  std::vector<IsometryClass> classes;        // sorted by smallest member

  std::vector<std::vector<int>> partition() const;
};

/// Partition of the Coxeter elements under: c1 ~ c2 iff some u-valid
/// graph automorphism mu has mu(c2) = c1 or mu(c2) = w0 c1^{-1} w0.
/// Witnesses are phi_mu for the first branch and g o phi_mu for the
/// second.  Requires an irreducible system.
Classification classify_associahedra(const CoxeterSystem& sys, const BasePoint& u);

/// Partition under: mu(c') = c or mu(c') = c^{-1} for some graph
/// automorphism mu (no kappa filtering; fans do not depend on u).
Classification classify_cambrian_fans(const CoxeterSystem& sys);

/// Search for a Gram-orthogonal linear map sending the vertex set of p1
/// onto the vertex set of p2: anchor on rare inner-product
/// fingerprints, backtrack over compatible vertex frames, solve for the
/// map, accept when it is Gram-orthogonal and bijects the vertex sets
/// within eps.  Returns the first witness found.  Independent of the
/// combinatorial classification path.
std::optional<LinearIsometry> congruence_oracle(const Polytope& p1, const Polytope& p2,
                                                double eps = kDefaultEpsilon);

struct CrossCheckReport {
  Classification combinatorial;
  std::vector<std::vector<int>> oracle_classes;
  bool agree = false;
  int counterexample_a = -1;  // pair where the two partitions disagree, if any
  int counterexample_b = -1;
  double runtime_ms = 0;
};

/// Computes the combinatorial partition and the pairwise-oracle
/// partition of all Coxeter elements and reports agreement.
/// Disagreement is a report outcome, not an exception.
CrossCheckReport verify_classification(const CoxeterSystem& sys, const BasePoint& u, int jobs = 1);

struct ReducibleReport {
  struct Entry {
    Word c;
    std::vector<int> component_subset;  // indices into sys.components()
    Word conjugated;                    // canonical word of w_A c^A w_A
    bool vertex_sets_match = false;
    double max_deviation = 0;
  };
  std::vector<Entry> entries;
  bool singleton_layers_ok = false;  // every w_A is a c-singleton, for every c
  double runtime_ms = 0;
  bool ok() const;
};

/// For every Coxeter element c and every subset A of the graph
/// components: builds g_A(v) = w_A(v) and the Coxeter element c^A
/// (reverse the A-letters of c), and verifies that the vertex sets of
/// Ass_c and g_A(Ass_{w_A c^A w_A}) coincide within eps.  Also checks
/// that each w_A is a c-singleton.  Throws NotReducible on an
/// irreducible system.
ReducibleReport classify_reducible(const CoxeterSystem& sys, const BasePoint& u);

}  // namespace coxassoc
