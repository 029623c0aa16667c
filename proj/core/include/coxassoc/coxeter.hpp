#pragma once

// Finite Coxeter systems: root systems with all roots of equal length,
// group elements as signed permutations of the positive roots, and the
// basic combinatorics built on them (words, automorphisms, cosets).
//
// Coordinate convention: V = R^rank with the simple roots as basis
// vectors.  All inner products go through the Gram matrix
// <a_s, a_t> = -cos(pi / m(s,t)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxassoc/errors.hpp"

namespace coxassoc {

/// Symmetric matrix of bond orders m(s,t); m(s,s) = 1, off-diagonal
/// entries are >= 2, with 0 encoding an infinite bond.
using CoxeterMatrix = std::vector<std::vector<int>>;

struct BuildOptions {
  /// Root closure aborts with NonFinite once more than 2 * root_cap
  /// positive roots have been generated (default 240 = |Phi(E8)|).
  int root_cap = 240;
  /// Two root vectors closer than this are identified during closure.
  double snap_epsilon = 1e-9;
};

/// A finite Coxeter system with its full positive root set and exact
/// reflection tables.  Immutable after construction; safe to share
/// read-only across threads.
class CoxeterSystem {
 public:
  int rank() const { return rank_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int s) const { return labels_[s]; }
  const CoxeterMatrix& coxeter_matrix() const { return matrix_; }
  int bond(int s, int t) const { return matrix_[s][t]; }

  double gram(int s, int t) const { return gram_[s * rank_ + t]; }
  const std::vector<double>& gram_matrix() const { return gram_; }

  int num_positive_roots() const { return static_cast<int>(roots_.size()); }
  /// Coordinates of positive root i in the simple-root basis.  Roots
  /// 0..rank-1 are the simple roots themselves.
  const std::vector<double>& positive_root(int i) const { return roots_[i]; }
  /// Image of positive root i under generator s, encoded +-(j+1).
  /// The sign is -1 exactly when i is the simple root of s.
  int32_t reflect_root(int s, int i) const { return tables_[s][i]; }

  /// Connected components of the Coxeter graph, as generator indices.
  const std::vector<std::vector<int>>& components() const { return components_; }
  bool is_irreducible() const { return components_.size() == 1; }

  /// Index of a generator label, or -1 when unknown.
  int label_index(const std::string& name) const;

  double gram_dot(const std::vector<double>& x, const std::vector<double>& y) const;

 private:
  friend CoxeterSystem build_system(const CoxeterMatrix&, std::vector<std::string>,
                                    const BuildOptions&);
  int rank_ = 0;
  std::vector<std::string> labels_;
  CoxeterMatrix matrix_;
  std::vector<double> gram_;
  std::vector<std::vector<double>> roots_;
  std::vector<std::vector<int32_t>> tables_;
  std::vector<std::vector<int>> components_;
};

/// Build a system from a Coxeter matrix.  Throws InvalidMatrix on a
/// malformed matrix and NonFinite when the root closure exceeds its
/// bound (affine or indefinite input).
CoxeterSystem build_system(const CoxeterMatrix& m, std::vector<std::string> labels = {},
                           const BuildOptions& opts = {});

/// Coxeter matrix of a named type: "A3", "B4", "D4", "E6".."E8", "F4",
/// "H3", "H4", "I2(7)", or an 'x'-separated direct product such as
/// "A2xA1".  Generators are labeled s1..sn across the whole product.
CoxeterMatrix named_matrix(const std::string& type_code);

/// Convenience: build_system(named_matrix(code)).
CoxeterSystem build_named(const std::string& type_code, const BuildOptions& opts = {});

/// Block-diagonal direct product of Coxeter matrices.
CoxeterMatrix direct_product(const std::vector<CoxeterMatrix>& factors);

/// An element of W in canonical form: the signed permutation it induces
/// on the positive roots.  Equality and composition are word-free.
class GroupElement {
 public:
  static GroupElement identity(const CoxeterSystem& sys);
  static GroupElement generator(const CoxeterSystem& sys, int s);

  const CoxeterSystem& system() const { return *sys_; }
  const CoxeterSystem* system_ptr() const { return sys_; }

  /// Number of positive roots sent to negative roots.
  int length() const { return length_; }
  bool is_identity() const { return length_ == 0; }

  /// Image of positive root i, encoded +-(j+1).
  int32_t root_image(int i) const { return image_[i]; }

  /// ell(w s) < ell(w)
  bool right_descent(int s) const { return image_[s] < 0; }
  /// ell(s w) < ell(w)
  bool left_descent(int s) const;

  GroupElement inverse() const;

  bool operator==(const GroupElement& o) const { return image_ == o.image_; }
  bool operator!=(const GroupElement& o) const { return image_ != o.image_; }
  bool operator<(const GroupElement& o) const { return image_ < o.image_; }

  std::size_t hash() const;

  friend GroupElement compose(const GroupElement& a, const GroupElement& b);
  friend GroupElement mul_gen(const GroupElement& w, int s);
  friend GroupElement gen_mul(int s, const GroupElement& w);

 private:
  GroupElement(const CoxeterSystem* sys, std::vector<int32_t> image, int length)
      : sys_(sys), image_(std::move(image)), length_(length) {}
  const CoxeterSystem* sys_ = nullptr;
  std::vector<int32_t> image_;
  int length_ = 0;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

/// a.b, acting as (a.b)(v) = a(b(v)).  Throws SystemMismatch unless both
/// elements belong to the same system.
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement mul_gen(const GroupElement& w, int s);  // w.s
GroupElement gen_mul(int s, const GroupElement& w);  // s.w

/// A word over generator indices.  Evaluation is always explicit.
struct Word {
  std::vector<int> letters;
  Word() = default;
  explicit Word(std::vector<int> l) : letters(std::move(l)) {}
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator<(const Word& o) const { return letters < o.letters; }
};

GroupElement evaluate(const CoxeterSystem& sys, const Word& w);
bool is_reduced(const CoxeterSystem& sys, const Word& w);

/// Lexicographically smallest reduced word of w (greedy on left descents).
Word reduced_word(const GroupElement& w);

/// Parse "s2,s1,s3" against the system's labels; "e" or "" is the empty word.
Word parse_word(const CoxeterSystem& sys, const std::string& csv);
std::string word_to_string(const CoxeterSystem& sys, const Word& w);

/// The set {t in T : ell(t w) < ell(w)} as sorted positive-root indices;
/// its size equals ell(w).
std::vector<int> inversions(const GroupElement& w);

/// The unique element of maximal length, found by greedy ascent in the
/// right weak order.
GroupElement longest_element(const CoxeterSystem& sys);

struct CoxeterElement {
  GroupElement element;
  Word word;  // lexicographically first reduced word, each generator once
};

/// All distinct Coxeter elements, sorted by canonical word.
std::vector<CoxeterElement> coxeter_elements(const CoxeterSystem& sys);

/// A bijection of S preserving the Coxeter matrix.
struct GraphAutomorphism {
  std::vector<int> map;
  int apply(int s) const { return map[s]; }
  bool is_identity() const;
  bool operator==(const GraphAutomorphism& o) const { return map == o.map; }
  bool operator<(const GraphAutomorphism& o) const { return map < o.map; }
};

/// All graph automorphisms, found by backtracking, sorted lexicographically.
std::vector<GraphAutomorphism> graph_automorphisms(const CoxeterSystem& sys);

/// The automorphism s -> w0 s w0.
GraphAutomorphism conjugation_by_w0(const CoxeterSystem& sys);

/// The group automorphism induced by a graph automorphism.
GroupElement apply_automorphism(const CoxeterSystem& sys, const GraphAutomorphism& mu,
                                const GroupElement& w);
Word apply_automorphism(const GraphAutomorphism& mu, const Word& w);

/// Minimal-length representative of the coset w W_I (strips right
/// descents lying in I).
GroupElement min_coset_rep(const GroupElement& w, const std::vector<int>& parabolic);

/// All group elements in weak-order BFS order (identity first).  Throws
/// when the group has more than cap elements.
std::vector<GroupElement> enumerate_group(const CoxeterSystem& sys, std::size_t cap = 2000000);

/// |W| when it does not exceed cap, nullopt otherwise.
std::optional<std::size_t> group_order(const CoxeterSystem& sys, std::size_t cap);

/// Matrix of w acting on V in simple-root coordinates (row-major,
/// columns are the images of the simple roots).
std::vector<double> element_matrix(const GroupElement& w);

std::vector<double> apply_matrix(int rank, const std::vector<double>& m,
                                 const std::vector<double>& v);

}  // namespace coxassoc
