#pragma once

// c-sorting words, c-factorizations, sortability, c-singletons and the
// singleton lattice G_c in the right weak order.

#include <cstdint>
#include <utility>
#include <vector>

#include "coxassoc/coxeter.hpp"

namespace coxassoc {

/// Blocks K_1,...,K_p of a c-factorization.  Each block lists generator
/// indices in the order they occur in c.
struct Factorization {
  std::vector<std::vector<int>> blocks;
};

/// Throws NotCoxeterWord unless c uses every generator exactly once.
void validate_coxeter_word(const CoxeterSystem& sys, const Word& c);

/// The reduced subword of c^infinity for w occupying the
/// lexicographically smallest position sequence, computed by the greedy
/// left-to-right scan: a letter s is taken whenever it is a left
/// descent of the remainder.
Word c_sorting_word(const GroupElement& w, const Word& c);

Factorization c_factorization(const GroupElement& w, const Word& c);

/// True iff the factorization blocks are nested: K_1 >= K_2 >= ... >= K_p.
bool is_c_sortable(const GroupElement& w, const Word& c);

/// True iff some reduced word for candidate is a prefix of a word
/// obtainable from target_word by swapping adjacent commuting letters.
/// BFS over the commutation class, falling back to the equivalent
/// heap-order-ideal test once class_cap words have been visited.
/// Throws NotReduced when target_word is not reduced.
bool is_prefix_up_to_commutation(const GroupElement& candidate, const Word& target_word,
                                 const CoxeterSystem& sys, std::size_t class_cap = 20000);

/// The c-singletons with their Hasse diagram in the right weak order.
struct SingletonLattice {
  struct Node {
    GroupElement element;
    Word word;  // subword of the sorting word of w0 on the lex-least ideal
  };
  std::vector<Node> nodes;                      // sorted by (length, word)
  std::vector<std::pair<int, int>> hasse_edges;  // (lower, upper), sorted

  /// Index of an element among the nodes, or -1.
  int node_index(const GroupElement& g) const;
};

/// All c-singletons, enumerated as order ideals of the heap of the
/// c-sorting word of w0 (BFS from e, extending by one letter at a time).
SingletonLattice c_singletons(const CoxeterSystem& sys, const Word& c);

/// {w : w and w.w0 are both c-singletons}, sorted by (length, word).
std::vector<GroupElement> both_singleton_pairs(const CoxeterSystem& sys, const Word& c);

}  // namespace coxassoc
