#include "coxassoc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "linalg.hpp"

namespace coxassoc {

namespace {

// Iterate all k-subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn fn) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

std::vector<int> complement_generators(int rank, int s) {
  std::vector<int> out;
  for (int t = 0; t < rank; ++t)
    if (t != s) out.push_back(t);
  return out;
}

struct LabelKey {
  std::size_t elem_hash;
  int s;
  bool operator==(const LabelKey& o) const { return elem_hash == o.elem_hash && s == o.s; }
};
struct LabelKeyHash {
  std::size_t operator()(const LabelKey& k) const { return k.elem_hash * 31 + k.s; }
};

Halfspace make_halfspace(const CoxeterSystem& sys, GroupElement rep, int s, const BasePoint& u,
                         const std::vector<std::vector<double>>& weights) {
  std::vector<double> normal = apply_matrix(sys.rank(), element_matrix(rep), weights[s]);
  return Halfspace{std::move(rep), s, std::move(normal), u.coords[s]};
}

void sort_halfspaces(std::vector<Halfspace>& hs) {
  std::stable_sort(hs.begin(), hs.end(), [&](const Halfspace& a, const Halfspace& b) {
    if (a.s != b.s) return a.s < b.s;
    return reduced_word(a.coset_rep) < reduced_word(b.coset_rep);
  });
}

double row_dot(const std::vector<double>& row, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += row[i] * v[i];
  return acc;
}

// Row form of the boundary hyperplane: (G n)^T v = offset.
std::vector<std::vector<double>> hyperplane_rows(const CoxeterSystem& sys,
                                                 const std::vector<Halfspace>& hs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(hs.size());
  const int n = sys.rank();
  for (const auto& h : hs) {
    std::vector<double> row(n, 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) row[r] += sys.gram(r, c) * h.normal[c];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

bool BasePoint::balanced() const {
  for (double k : kappa)
    if (std::abs(k - kappa[0]) > 1e-12) return false;
  return true;
}

BasePoint base_point(const CoxeterSystem& sys, std::vector<double> kappa) {
  if (static_cast<int>(kappa.size()) != sys.rank())
    throw InvalidConfig("kappa list length must equal the rank");
  for (double k : kappa)
    if (!(k > 0)) throw InvalidConfig("kappa entries must be positive");
  linalg::Mat inv;
  if (!linalg::invert(sys.rank(), sys.gram_matrix(), inv))
    throw SingularGram("Gram matrix is singular");
  BasePoint u;
  u.coords = apply_matrix(sys.rank(), inv, kappa);
  u.kappa = std::move(kappa);
  return u;
}

BasePoint balanced_point(const CoxeterSystem& sys, double kappa) {
  return base_point(sys, std::vector<double>(sys.rank(), kappa));
}

std::vector<std::vector<double>> fundamental_weights(const CoxeterSystem& sys) {
  linalg::Mat inv;
  if (!linalg::invert(sys.rank(), sys.gram_matrix(), inv))
    throw SingularGram("Gram matrix is singular");
  std::vector<std::vector<double>> out(sys.rank(), std::vector<double>(sys.rank()));
  for (int s = 0; s < sys.rank(); ++s)
    for (int r = 0; r < sys.rank(); ++r) out[s][r] = inv[r * sys.rank() + s];
  return out;
}

std::vector<double> orbit_point(const GroupElement& w, const BasePoint& u) {
  return apply_matrix(w.system().rank(), element_matrix(w), u.coords);
}

std::vector<Halfspace> permutahedron_halfspaces(const CoxeterSystem& sys, const BasePoint& u) {
  auto weights = fundamental_weights(sys);
  auto elements = enumerate_group(sys);
  std::vector<Halfspace> out;
  std::unordered_map<LabelKey, int, LabelKeyHash> seen;
  for (const auto& w : elements) {
    for (int s = 0; s < sys.rank(); ++s) {
      GroupElement rep = min_coset_rep(w, complement_generators(sys.rank(), s));
      LabelKey key{rep.hash(), s};
      if (seen.emplace(key, 1).second) out.push_back(make_halfspace(sys, rep, s, u, weights));
    }
  }
  sort_halfspaces(out);
  return out;
}

Polytope permutahedron(const CoxeterSystem& sys, const BasePoint& u) {
  auto weights = fundamental_weights(sys);
  auto elements = enumerate_group(sys);
  Polytope poly;
  poly.sys = &sys;
  poly.vertex_elements = elements;
  poly.vertices.reserve(elements.size());
  for (const auto& w : elements) poly.vertices.push_back(orbit_point(w, u));

  // Facets, then exact incidence through the coset criterion.
  struct Entry {
    GroupElement rep;
    int s;
  };
  std::vector<Entry> entries;
  std::unordered_map<LabelKey, int, LabelKeyHash> facet_of;
  std::vector<std::vector<int>> label_of(elements.size(), std::vector<int>(sys.rank()));
  for (std::size_t wi = 0; wi < elements.size(); ++wi) {
    for (int s = 0; s < sys.rank(); ++s) {
      GroupElement rep = min_coset_rep(elements[wi], complement_generators(sys.rank(), s));
      LabelKey key{rep.hash(), s};
      auto [it, fresh] = facet_of.emplace(key, static_cast<int>(entries.size()));
      if (fresh) entries.push_back(Entry{std::move(rep), s});
      label_of[wi][s] = it->second;
    }
  }
  std::vector<int> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<Word> words(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) words[i] = reduced_word(entries[i].rep);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (entries[a].s != entries[b].s) return entries[a].s < entries[b].s;
    return words[a] < words[b];
  });
  std::vector<int> rank_of(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank_of[order[i]] = static_cast<int>(i);

  poly.halfspaces.reserve(entries.size());
  for (int idx : order)
    poly.halfspaces.push_back(make_halfspace(sys, entries[idx].rep, entries[idx].s, u, weights));
  poly.incidence.resize(static_cast<int>(entries.size()), static_cast<int>(elements.size()));
  for (std::size_t wi = 0; wi < elements.size(); ++wi)
    for (int s = 0; s < sys.rank(); ++s)
      poly.incidence.set(rank_of[label_of[wi][s]], static_cast<int>(wi), true);
  return poly;
}

std::vector<Halfspace> admissible_halfspaces(const CoxeterSystem& sys, const Word& c,
                                             const BasePoint& u) {
  auto weights = fundamental_weights(sys);
  SingletonLattice lattice = c_singletons(sys, c);
  std::vector<Halfspace> out;
  std::unordered_map<LabelKey, int, LabelKeyHash> seen;
  for (const auto& node : lattice.nodes) {
    for (int s = 0; s < sys.rank(); ++s) {
      GroupElement rep = min_coset_rep(node.element, complement_generators(sys.rank(), s));
      LabelKey key{rep.hash(), s};
      if (seen.emplace(key, 1).second) out.push_back(make_halfspace(sys, rep, s, u, weights));
    }
  }
  sort_halfspaces(out);
  return out;
}

std::vector<std::vector<double>> enumerate_vertices(const CoxeterSystem& sys,
                                                    const std::vector<Halfspace>& halfspaces,
                                                    double eps) {
  const int rank = sys.rank();
  const int m = static_cast<int>(halfspaces.size());
  if (m < rank) throw UnboundedOrDegenerate("fewer halfspaces than the rank");
  auto rows = hyperplane_rows(sys, halfspaces);

  std::vector<std::vector<double>> verts;
  for_each_subset(m, rank, [&](const std::vector<int>& subset) {
    linalg::Mat a(static_cast<std::size_t>(rank) * rank);
    std::vector<double> b(rank);
    for (int r = 0; r < rank; ++r) {
      for (int c = 0; c < rank; ++c) a[r * rank + c] = rows[subset[r]][c];
      b[r] = halfspaces[subset[r]].offset;
    }
    std::vector<double> x;
    if (!linalg::lu_solve(rank, std::move(a), std::move(b), x, 1e-9)) return;
    for (int i = 0; i < m; ++i)
      if (row_dot(rows[i], x) > halfspaces[i].offset + eps) return;
    for (const auto& v : verts) {
      double d = 0.0;
      for (int c = 0; c < rank; ++c) d = std::max(d, std::abs(v[c] - x[c]));
      if (d < eps) return;
    }
    verts.push_back(std::move(x));
  });
  if (verts.empty()) throw UnboundedOrDegenerate("no vertex found");

  // Recession detection: an extreme ray of the recession cone is tight
  // on rank-1 independent hyperplanes, so scanning kernel directions of
  // all (rank-1)-subsets catches any unbounded direction.
  bool unbounded = false;
  for_each_subset(m, rank - 1, [&](const std::vector<int>& subset) {
    if (unbounded) return;
    linalg::Mat a(static_cast<std::size_t>(rank - 1) * rank);
    for (int r = 0; r + 1 < rank; ++r)
      for (int c = 0; c < rank; ++c) a[r * rank + c] = rows[subset[r]][c];
    std::vector<double> d = linalg::kernel_direction(rank - 1, rank, std::move(a));
    if (d.empty()) return;
    for (int sign = 0; sign < 2; ++sign) {
      bool recession = true;
      for (int i = 0; i < m && recession; ++i)
        if (row_dot(rows[i], d) > eps) recession = false;
      if (recession) {
        unbounded = true;
        return;
      }
      for (double& v : d) v = -v;
    }
  });
  if (rank == 1) {
    // no (rank-1)-subsets exist; a single-sided line is unbounded
    bool pos = false, neg = false;
    for (const auto& row : rows) (row[0] > 0 ? pos : neg) = true;
    if (!(pos && neg)) unbounded = true;
  }
  if (unbounded) throw UnboundedOrDegenerate("recession direction detected");
  return verts;
}

Polytope polytope_from_halfspaces(const CoxeterSystem& sys, std::vector<Halfspace> halfspaces,
                                  double eps) {
  Polytope poly;
  poly.sys = &sys;
  poly.epsilon = eps;
  poly.vertices = enumerate_vertices(sys, halfspaces, eps);
  poly.halfspaces = std::move(halfspaces);
  auto rows = hyperplane_rows(sys, poly.halfspaces);
  poly.incidence.resize(static_cast<int>(poly.halfspaces.size()),
                        static_cast<int>(poly.vertices.size()));
  for (std::size_t f = 0; f < poly.halfspaces.size(); ++f)
    for (std::size_t v = 0; v < poly.vertices.size(); ++v)
      if (std::abs(row_dot(rows[f], poly.vertices[v]) - poly.halfspaces[f].offset) <= eps)
        poly.incidence.set(static_cast<int>(f), static_cast<int>(v), true);
  return poly;
}

Polytope associahedron(const CoxeterSystem& sys, const Word& c, const BasePoint& u) {
  return polytope_from_halfspaces(sys, admissible_halfspaces(sys, c, u));
}

Polytope apex_polytope(const CoxeterSystem& sys, const BasePoint& u) {
  auto weights = fundamental_weights(sys);
  GroupElement w0 = longest_element(sys);
  std::vector<Halfspace> hs;
  for (int s = 0; s < sys.rank(); ++s)
    hs.push_back(make_halfspace(sys, GroupElement::identity(sys), s, u, weights));
  for (int s = 0; s < sys.rank(); ++s)
    hs.push_back(make_halfspace(
        sys, min_coset_rep(w0, complement_generators(sys.rank(), s)), s, u, weights));
  return polytope_from_halfspaces(sys, std::move(hs));
}

std::vector<NormalCone> normal_cones(const Polytope& poly) {
  std::vector<NormalCone> out;
  out.reserve(poly.vertices.size());
  for (int v = 0; v < static_cast<int>(poly.vertices.size()); ++v) {
    NormalCone cone;
    cone.vertex = v;
    for (int f = 0; f < static_cast<int>(poly.halfspaces.size()); ++f)
      if (poly.incidence.at(f, v)) cone.rays.push_back(poly.halfspaces[f].normal);
    out.push_back(std::move(cone));
  }
  return out;
}

std::vector<std::pair<int, int>> polytope_edges(const Polytope& poly) {
  const int nv = static_cast<int>(poly.vertices.size());
  const int nf = static_cast<int>(poly.halfspaces.size());
  const int need = poly.sys->rank() - 1;
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      int shared = 0;
      for (int f = 0; f < nf; ++f)
        if (poly.incidence.at(f, a) && poly.incidence.at(f, b)) ++shared;
      if (shared >= need) out.emplace_back(a, b);
    }
  return out;
}

std::vector<long long> f_vector(const Polytope& poly) {
  const int rank = poly.sys->rank();
  const int nv = static_cast<int>(poly.vertices.size());
  const int nf = static_cast<int>(poly.halfspaces.size());
  if (rank == 1) return {nv};
  std::vector<long long> f(rank, 0);
  f[0] = nv;
  f[rank - 1] = nf;
  if (rank >= 3) f[1] = static_cast<long long>(polytope_edges(poly).size());
  // A k-face of a simple polytope is the intersection of exactly rank-k
  // facets; count facet subsets whose common vertex set is k-dimensional.
  for (int k = 2; k <= rank - 2; ++k) {
    long long count = 0;
    for_each_subset(nf, rank - k, [&](const std::vector<int>& subset) {
      std::vector<int> common;
      for (int v = 0; v < nv; ++v) {
        bool on_all = true;
        for (int fi : subset)
          if (!poly.incidence.at(fi, v)) {
            on_all = false;
            break;
          }
        if (on_all) common.push_back(v);
      }
      if (static_cast<int>(common.size()) < k + 1) return;
      linalg::Mat m(static_cast<std::size_t>(common.size() - 1) * rank);
      for (std::size_t r = 1; r < common.size(); ++r)
        for (int c = 0; c < rank; ++c)
          m[(r - 1) * rank + c] =
              poly.vertices[common[r]][c] - poly.vertices[common[0]][c];
      if (linalg::mat_rank(static_cast<int>(common.size()) - 1, rank, std::move(m)) == k)
        ++count;
    });
    f[k] = count;
  }
  return f;
}

bool vertex_sets_equal(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b, double eps, double* max_dev) {
  if (max_dev) *max_dev = 0.0;
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& pa : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = 0.0;
      for (std::size_t c = 0; c < pa.size(); ++c) d = std::max(d, std::abs(pa[c] - b[j][c]));
      if (d <= eps) {
        used[j] = 1;
        matched = true;
        if (max_dev) *max_dev = std::max(*max_dev, d);
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace coxassoc
