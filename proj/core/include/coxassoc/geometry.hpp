#pragma once

// Orbit points M(w), labeled halfspaces, the permutahedron, admissible
// halfspaces, generalized associahedra, the auxiliary polytope bounded
// by the halfspaces at M(e) and M(w0), and brute-force vertex
// enumeration.  All combinatorial facts (labels, admissibility,
// permutahedron incidence) come from exact group data; floating point
// only touches vertex coordinates.

#include <utility>
#include <vector>

#include "coxassoc/coxeter.hpp"
#include "coxassoc/sortable.hpp"

namespace coxassoc {

inline constexpr double kDefaultEpsilon = 1e-9;

/// The point u = sum kappa_s v_s, kept with its coefficients.
struct BasePoint {
  std::vector<double> kappa;
  std::vector<double> coords;  // simple-root coordinates of u
  bool balanced() const;
};

/// Throws InvalidConfig unless kappa has rank positive entries.
BasePoint base_point(const CoxeterSystem& sys, std::vector<double> kappa);
BasePoint balanced_point(const CoxeterSystem& sys, double kappa = 1.0);

/// Fundamental weights v_s with <v_t, a_s> = delta_st, computed by
/// inverting the Gram matrix.  Throws SingularGram if inversion fails.
std::vector<std::vector<double>> fundamental_weights(const CoxeterSystem& sys);

/// M(w) = w(M(e)).
std::vector<double> orbit_point(const GroupElement& w, const BasePoint& u);

/// The halfspace {v : <v, x(v_s)> <= <M(e), v_s>} with its coset label.
/// Two halfspaces are equal iff their labels (coset_rep, s) are equal;
/// coset_rep is the minimal-length representative of x W_{S \ {s}}.
struct Halfspace {
  GroupElement coset_rep;
  int s;
  std::vector<double> normal;  // x(v_s) in simple-root coordinates
  double offset;               // <M(e), v_s>
};

struct IncidenceMatrix {
  int facets = 0;
  int vertices = 0;
  std::vector<char> bits;
  bool at(int f, int v) const { return bits[static_cast<std::size_t>(f) * vertices + v] != 0; }
  void set(int f, int v, bool b) { bits[static_cast<std::size_t>(f) * vertices + v] = b ? 1 : 0; }
  void resize(int f, int v) {
    facets = f;
    vertices = v;
    bits.assign(static_cast<std::size_t>(f) * v, 0);
  }
};

/// Paired H-representation and V-representation with facet-vertex
/// incidence.  vertex_elements is filled for permutahedra only, aligned
/// with vertices.
struct Polytope {
  const CoxeterSystem* sys = nullptr;
  std::vector<Halfspace> halfspaces;
  std::vector<std::vector<double>> vertices;
  IncidenceMatrix incidence;
  std::vector<GroupElement> vertex_elements;
  double epsilon = kDefaultEpsilon;
};

/// All distinct halfspaces of Perm_u(W), deduplicated by coset label and
/// sorted by (s, label word).
std::vector<Halfspace> permutahedron_halfspaces(const CoxeterSystem& sys, const BasePoint& u);

/// Perm_u(W): V-representation is the orbit {M(w)}, incidence comes from
/// the coset criterion M(w) in H_(x,s) iff x = minrep(w, S \ {s}).
Polytope permutahedron(const CoxeterSystem& sys, const BasePoint& u);

/// The halfspaces whose bounding hyperplane passes through M(w) for at
/// least one c-singleton w, computed from coset labels alone.
std::vector<Halfspace> admissible_halfspaces(const CoxeterSystem& sys, const Word& c,
                                             const BasePoint& u);

/// Intersection of the c-admissible halfspaces, vertices by enumeration.
Polytope associahedron(const CoxeterSystem& sys, const Word& c, const BasePoint& u);

/// Intersection of the 2*rank halfspaces at M(e) and M(w0); a
/// full-dimensional polytope with apexes M(e) and M(w0).
Polytope apex_polytope(const CoxeterSystem& sys, const BasePoint& u);

/// Brute force over rank-subsets of boundary hyperplanes: solve, keep
/// feasible solutions, deduplicate.  Throws UnboundedOrDegenerate when
/// no vertex exists or a recession direction is detected.
std::vector<std::vector<double>> enumerate_vertices(const CoxeterSystem& sys,
                                                    const std::vector<Halfspace>& halfspaces,
                                                    double eps = kDefaultEpsilon);

/// enumerate_vertices plus numeric facet-vertex incidence.
Polytope polytope_from_halfspaces(const CoxeterSystem& sys, std::vector<Halfspace> halfspaces,
                                  double eps = kDefaultEpsilon);

/// Maximal normal cone at each vertex, spanned by the outer normals of
/// its incident facets.  The full list represents the normal fan.
struct NormalCone {
  int vertex;
  std::vector<std::vector<double>> rays;
};
std::vector<NormalCone> normal_cones(const Polytope& poly);

/// (f_0, ..., f_{rank-1}).  Faces are read off the incidence matrix;
/// valid for the simple polytopes produced here.
std::vector<long long> f_vector(const Polytope& poly);

/// Vertex pairs lying on rank-1 common facets.
std::vector<std::pair<int, int>> polytope_edges(const Polytope& poly);

/// Exact-multiset comparison of two point sets within eps (greedy
/// matching under the max-abs metric).  max_dev receives the largest
/// matched deviation when non-null.
bool vertex_sets_equal(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b, double eps,
                       double* max_dev = nullptr);

}  // namespace coxassoc
