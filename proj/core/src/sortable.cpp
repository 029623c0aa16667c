#include "coxassoc/sortable.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace coxassoc {

namespace {

// Bitset over at most 128 word positions / root indices.
struct Bits {
  uint64_t lo = 0, hi = 0;
  void set(int i) { (i < 64 ? lo : hi) |= 1ull << (i & 63); }
  bool test(int i) const { return ((i < 64 ? lo : hi) >> (i & 63)) & 1ull; }
  bool operator==(const Bits& o) const { return lo == o.lo && hi == o.hi; }
  bool subset_of(const Bits& o) const { return (lo & ~o.lo) == 0 && (hi & ~o.hi) == 0; }
  bool proper_subset_of(const Bits& o) const { return subset_of(o) && !(*this == o); }
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    return b.lo * 1099511628211ull ^ (b.hi + 0x9e3779b97f4a7c15ull);
  }
};

bool commute(const CoxeterSystem& sys, int s, int t) { return sys.bond(s, t) == 2; }

// Positions q < p whose letters do not commute with letter(p); an order
// ideal of the heap must contain all of them before p can enter.
std::vector<std::vector<int>> blockers(const CoxeterSystem& sys, const std::vector<int>& letters) {
  std::vector<std::vector<int>> out(letters.size());
  for (std::size_t p = 0; p < letters.size(); ++p)
    for (std::size_t q = 0; q < p; ++q)
      if (!commute(sys, letters[q], letters[p])) out[p].push_back(static_cast<int>(q));
  return out;
}

Bits inversion_bits(const GroupElement& w) {
  Bits b;
  const int n = w.system().num_positive_roots();
  for (int i = 0; i < n; ++i)
    if (w.root_image(i) < 0) b.set(-w.root_image(i) - 1);
  return b;
}

// All order ideals of the heap of a reduced word, as (ideal, element)
// pairs discovered by BFS; visits positions in ascending order so the
// traversal is deterministic.
template <typename Visit>
void for_each_heap_ideal(const CoxeterSystem& sys, const std::vector<int>& letters, Visit visit) {
  const int n = static_cast<int>(letters.size());
  if (n > 128) throw InvalidConfig("word too long for singleton enumeration");
  auto need = blockers(sys, letters);
  std::deque<std::pair<Bits, GroupElement>> queue;
  std::unordered_set<Bits, BitsHash> seen;
  queue.emplace_back(Bits{}, GroupElement::identity(sys));
  seen.insert(Bits{});
  visit(Bits{}, queue.front().second);
  while (!queue.empty()) {
    auto [ideal, elem] = queue.front();
    queue.pop_front();
    for (int p = 0; p < n; ++p) {
      if (ideal.test(p)) continue;
      bool addable = true;
      for (int q : need[p])
        if (!ideal.test(q)) {
          addable = false;
          break;
        }
      if (!addable) continue;
      Bits next = ideal;
      next.set(p);
      if (!seen.insert(next).second) continue;
      GroupElement extended = mul_gen(elem, letters[p]);
      visit(next, extended);
      queue.emplace_back(std::move(next), std::move(extended));
    }
  }
}

std::vector<int> ideal_positions(const Bits& ideal, int n) {
  std::vector<int> out;
  for (int p = 0; p < n; ++p)
    if (ideal.test(p)) out.push_back(p);
  return out;
}

}  // namespace

void validate_coxeter_word(const CoxeterSystem& sys, const Word& c) {
  if (static_cast<int>(c.size()) != sys.rank())
    throw NotCoxeterWord("a Coxeter word uses every generator exactly once");
  std::vector<char> seen(sys.rank(), 0);
  for (int s : c.letters) {
    if (s < 0 || s >= sys.rank() || seen[s])
      throw NotCoxeterWord("a Coxeter word uses every generator exactly once");
    seen[s] = 1;
  }
}

Word c_sorting_word(const GroupElement& w, const Word& c) {
  const CoxeterSystem& sys = w.system();
  validate_coxeter_word(sys, c);
  Word out;
  GroupElement remainder = w;
  while (!remainder.is_identity()) {
    bool took = false;
    for (int s : c.letters) {
      if (remainder.left_descent(s)) {
        out.letters.push_back(s);
        remainder = gen_mul(s, remainder);
        took = true;
      }
    }
    if (!took) throw InvalidConfig("sorting scan stalled");  // cannot happen
  }
  return out;
}

Factorization c_factorization(const GroupElement& w, const Word& c) {
  const CoxeterSystem& sys = w.system();
  validate_coxeter_word(sys, c);
  Factorization out;
  GroupElement remainder = w;
  while (!remainder.is_identity()) {
    std::vector<int> block;
    for (int s : c.letters) {
      if (remainder.left_descent(s)) {
        block.push_back(s);
        remainder = gen_mul(s, remainder);
      }
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

bool is_c_sortable(const GroupElement& w, const Word& c) {
  Factorization f = c_factorization(w, c);
  for (std::size_t i = 1; i < f.blocks.size(); ++i) {
    // K_i must contain K_{i+1}
    std::vector<char> in_prev(w.system().rank(), 0);
    for (int s : f.blocks[i - 1]) in_prev[s] = 1;
    for (int s : f.blocks[i])
      if (!in_prev[s]) return false;
  }
  return true;
}

bool is_prefix_up_to_commutation(const GroupElement& candidate, const Word& target_word,
                                 const CoxeterSystem& sys, std::size_t class_cap) {
  if (!is_reduced(sys, target_word)) throw NotReduced("target word is not reduced");
  const int k = candidate.length();
  const int n = static_cast<int>(target_word.size());
  if (k > n) return false;
  if (k == 0) return true;

  // BFS over the commutation class, testing the length-k prefix of each word.
  std::deque<std::vector<int>> queue{target_word.letters};
  std::set<std::vector<int>> visited{target_word.letters};
  bool capped = false;
  while (!queue.empty()) {
    std::vector<int> word = std::move(queue.front());
    queue.pop_front();
    GroupElement prefix = GroupElement::identity(sys);
    for (int i = 0; i < k; ++i) prefix = mul_gen(prefix, word[i]);
    if (prefix == candidate) return true;
    for (int i = 0; i + 1 < n; ++i) {
      if (!commute(sys, word[i], word[i + 1])) continue;
      std::swap(word[i], word[i + 1]);
      if (visited.find(word) == visited.end()) {
        if (visited.size() >= class_cap) {
          capped = true;
        } else {
          visited.insert(word);
          queue.push_back(word);
        }
      }
      std::swap(word[i], word[i + 1]);
    }
    if (capped) break;
  }
  if (!capped) return false;

  // Fallback: candidate is a prefix up to commutation iff some
  // size-k order ideal of the heap of target_word evaluates to it.
  bool found = false;
  for_each_heap_ideal(sys, target_word.letters, [&](const Bits&, const GroupElement& elem) {
    if (!found && elem.length() == k && elem == candidate) found = true;
  });
  return found;
}

int SingletonLattice::node_index(const GroupElement& g) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].element == g) return static_cast<int>(i);
  return -1;
}

SingletonLattice c_singletons(const CoxeterSystem& sys, const Word& c) {
  validate_coxeter_word(sys, c);
  GroupElement w0 = longest_element(sys);
  Word sorting = c_sorting_word(w0, c);
  const int n = static_cast<int>(sorting.size());

  // element -> lexicographically least ideal (as sorted positions)
  std::unordered_map<GroupElement, std::vector<int>, GroupElementHash> best;
  for_each_heap_ideal(sys, sorting.letters, [&](const Bits& ideal, const GroupElement& elem) {
    std::vector<int> pos = ideal_positions(ideal, n);
    auto [it, fresh] = best.emplace(elem, pos);
    if (!fresh && pos < it->second) it->second = pos;
  });

  SingletonLattice out;
  out.nodes.reserve(best.size());
  for (auto& [elem, pos] : best) {
    Word word;
    for (int p : pos) word.letters.push_back(sorting.letters[p]);
    out.nodes.push_back(SingletonLattice::Node{elem, std::move(word)});
  }
  std::sort(out.nodes.begin(), out.nodes.end(), [](const auto& a, const auto& b) {
    if (a.element.length() != b.element.length())
      return a.element.length() < b.element.length();
    return a.word < b.word;
  });

  // Covers of the induced right weak order: containment of inversion
  // sets, with no node strictly between.  Length-one gaps are always
  // covers; larger gaps need an intermediate scan.
  const int count = static_cast<int>(out.nodes.size());
  std::vector<Bits> inv(count);
  std::vector<int> len(count);
  for (int i = 0; i < count; ++i) {
    inv[i] = inversion_bits(out.nodes[i].element);
    len[i] = out.nodes[i].element.length();
  }
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      if (len[a] >= len[b]) continue;
      if (!inv[a].proper_subset_of(inv[b])) continue;
      bool cover = true;
      if (len[b] - len[a] > 1) {
        for (int m = 0; m < count && cover; ++m)
          if (len[m] > len[a] && len[m] < len[b] && inv[a].proper_subset_of(inv[m]) &&
              inv[m].proper_subset_of(inv[b]))
            cover = false;
      }
      if (cover) out.hasse_edges.emplace_back(a, b);
    }
  std::sort(out.hasse_edges.begin(), out.hasse_edges.end());
  return out;
}

std::vector<GroupElement> both_singleton_pairs(const CoxeterSystem& sys, const Word& c) {
  SingletonLattice lattice = c_singletons(sys, c);
  std::unordered_set<GroupElement, GroupElementHash> members;
  for (const auto& node : lattice.nodes) members.insert(node.element);
  GroupElement w0 = longest_element(sys);
  std::vector<GroupElement> out;
  for (const auto& node : lattice.nodes)
    if (members.count(compose(node.element, w0))) out.push_back(node.element);
  // nodes are already sorted by (length, word)
  return out;
}

}  // namespace coxassoc
