#include "coxassoc/isometry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numeric>
#include <unordered_map>

#include "linalg.hpp"

namespace coxassoc {

namespace {

std::string mu_detail(const CoxeterSystem& sys, const GraphAutomorphism& mu) {
  std::string out = "phi_mu{";
  for (int s = 0; s < sys.rank(); ++s) {
    if (s) out += ",";
    out += sys.label(s) + "->" + sys.label(mu.apply(s));
  }
  out += "}";
  return out;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<int>> dsu_partition(Dsu& dsu, int n) {
  std::unordered_map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[dsu.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PairRelation {
  int from, to;  // Ass_{c_from} maps onto Ass_{c_to}
  LinearIsometry iso;
};

// The relation of the main classification: for each i < j, the first
// u-valid mu (in lex order) with mu(c_j) = c_i, then the first with
// mu(c_j) = w0 c_i^{-1} w0.
std::vector<PairRelation> direct_relations(const CoxeterSystem& sys,
                                           const std::vector<CoxeterElement>& ces,
                                           const std::vector<GraphAutomorphism>& autos,
                                           bool fan_rule) {
  GroupElement w0 = longest_element(sys);
  std::vector<double> g_matrix = element_matrix(w0);
  const int n = static_cast<int>(ces.size());
  std::vector<PairRelation> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool found = false;
      for (const auto& mu : autos) {
        GroupElement image = evaluate(sys, apply_automorphism(mu, ces[j].word));
        if (image == ces[i].element) {
          out.push_back(PairRelation{j, i, automorphism_isometry(sys, mu)});
          found = true;
          break;
        }
      }
      if (!found) {
        for (const auto& mu : autos) {
          GroupElement image = evaluate(sys, apply_automorphism(mu, ces[j].word));
          GroupElement target =
              fan_rule ? ces[i].element.inverse()
                       : compose(compose(w0, ces[i].element.inverse()), w0);
          if (image == target) {
            if (fan_rule) {
              out.push_back(PairRelation{j, i, automorphism_isometry(sys, mu)});
            } else {
              LinearIsometry phi = automorphism_isometry(sys, mu);
              LinearIsometry iso;
              iso.matrix = linalg::matmul(sys.rank(), g_matrix, phi.matrix);
              iso.provenance = LinearIsometry::Provenance::Composition;
              iso.detail = "g*" + mu_detail(sys, mu);
              out.push_back(PairRelation{j, i, std::move(iso)});
            }
            found = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

Classification classes_from_relations(std::vector<CoxeterElement> ces,
                                      const std::vector<PairRelation>& relations,
                                      bool keep_witnesses) {
  const int n = static_cast<int>(ces.size());
  Dsu dsu(n);
  for (const auto& rel : relations) dsu.unite(rel.from, rel.to);
  Classification out;
  out.coxeter_elts = std::move(ces);
  for (auto& members : dsu_partition(dsu, n)) {
    IsometryClass cls;
    cls.members = std::move(members);
    out.classes.push_back(std::move(cls));
  }
  if (keep_witnesses) {
    for (const auto& rel : relations) {
      for (auto& cls : out.classes) {
        if (std::find(cls.members.begin(), cls.members.end(), rel.to) != cls.members.end()) {
          cls.witnesses.push_back(IsometryClass::Witness{rel.from, rel.to, rel.iso});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<double> fingerprint(const CoxeterSystem& sys,
                                const std::vector<std::vector<double>>& verts, std::size_t i) {
  std::vector<double> out;
  out.reserve(verts.size());
  for (const auto& w : verts) out.push_back(sys.gram_dot(verts[i], w));
  std::sort(out.begin(), out.end());
  return out;
}

bool close_lists(const std::vector<double>& a, const std::vector<double>& b, double eps) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > eps) return false;
  return true;
}

}  // namespace

std::vector<std::vector<int>> Classification::partition() const {
  std::vector<std::vector<int>> out;
  out.reserve(classes.size());
  for (const auto& cls : classes) out.push_back(cls.members);
  return out;
}

LinearIsometry automorphism_isometry(const CoxeterSystem& sys, const GraphAutomorphism& mu) {
  const int n = sys.rank();
  LinearIsometry iso;
  iso.matrix.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) iso.matrix[mu.apply(s) * n + s] = 1.0;
  iso.provenance = LinearIsometry::Provenance::PhiMu;
  iso.detail = mu_detail(sys, mu);
  return iso;
}

LinearIsometry element_isometry(const GroupElement& w, const std::string& detail) {
  LinearIsometry iso;
  iso.matrix = element_matrix(w);
  iso.provenance = LinearIsometry::Provenance::ElementAction;
  iso.detail = detail;
  return iso;
}

bool is_gram_orthogonal(const CoxeterSystem& sys, const std::vector<double>& m, double eps) {
  const int n = sys.rank();
  linalg::Mat gm = linalg::matmul(n, sys.gram_matrix(), m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;  // (M^T G M)[r][c]
      for (int k = 0; k < n; ++k) acc += m[k * n + r] * gm[k * n + c];
      if (std::abs(acc - sys.gram(r, c)) > eps) return false;
    }
  return true;
}

bool is_u_automorphism(const GraphAutomorphism& mu, const BasePoint& u) {
  for (std::size_t s = 0; s < u.kappa.size(); ++s)
    if (std::abs(u.kappa[s] - u.kappa[mu.apply(static_cast<int>(s))]) > 1e-12) return false;
  return true;
}

Halfspace transport_halfspace(const CoxeterSystem& sys, const GraphAutomorphism& mu,
                              const Halfspace& h, const BasePoint& u) {
  auto weights = fundamental_weights(sys);
  GroupElement image_rep = apply_automorphism(sys, mu, h.coset_rep);
  int image_s = mu.apply(h.s);
  // mu preserves lengths and parabolics, so the image is again minimal.
  std::vector<double> normal =
      apply_matrix(sys.rank(), element_matrix(image_rep), weights[image_s]);
  Halfspace out{std::move(image_rep), image_s, std::move(normal), u.coords[image_s]};

  LinearIsometry phi = automorphism_isometry(sys, mu);
  std::vector<double> mapped = apply_matrix(sys.rank(), phi.matrix, h.normal);
  for (int c = 0; c < sys.rank(); ++c)
    if (std::abs(mapped[c] - out.normal[c]) > 1e-9)
      throw LabelGeometryMismatch("label image and geometric image disagree");
  if (std::abs(h.offset - out.offset) > 1e-9)
    throw LabelGeometryMismatch("offsets disagree; mu is not a u-automorphism");
  return out;
}

Classification classify_associahedra(const CoxeterSystem& sys, const BasePoint& u) {
  if (!sys.is_irreducible())
    throw InvalidConfig("classify_associahedra requires an irreducible system");
  auto ces = coxeter_elements(sys);
  std::vector<GraphAutomorphism> autos;
  for (auto& mu : graph_automorphisms(sys))
    if (is_u_automorphism(mu, u)) autos.push_back(mu);
  auto relations = direct_relations(sys, ces, autos, /*fan_rule=*/false);
  return classes_from_relations(std::move(ces), relations, /*keep_witnesses=*/true);
}

Classification classify_cambrian_fans(const CoxeterSystem& sys) {
  if (!sys.is_irreducible())
    throw InvalidConfig("classify_cambrian_fans requires an irreducible system");
  auto ces = coxeter_elements(sys);
  auto autos = graph_automorphisms(sys);
  auto relations = direct_relations(sys, ces, autos, /*fan_rule=*/true);
  return classes_from_relations(std::move(ces), relations, /*keep_witnesses=*/false);
}

std::optional<LinearIsometry> congruence_oracle(const Polytope& p1, const Polytope& p2,
                                                double eps) {
  if (p1.sys != p2.sys) throw SystemMismatch("oracle expects polytopes from one system");
  const CoxeterSystem& sys = *p1.sys;
  const int rank = sys.rank();
  const auto& v1 = p1.vertices;
  const auto& v2 = p2.vertices;
  if (v1.size() != v2.size()) return std::nullopt;
  const int n = static_cast<int>(v1.size());

  std::vector<std::vector<double>> fp1(n), fp2(n);
  for (int i = 0; i < n; ++i) {
    fp1[i] = fingerprint(sys, v1, i);
    fp2[i] = fingerprint(sys, v2, i);
  }
  std::vector<std::vector<int>> candidates(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (close_lists(fp1[i], fp2[j], eps)) candidates[i].push_back(j);
    if (candidates[i].empty()) return std::nullopt;
  }

  // Linear frame from p1 vertices, rare fingerprints first.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return candidates[a].size() < candidates[b].size();
  });
  std::vector<int> frame;
  std::vector<double> frame_rows;
  for (int idx : order) {
    if (static_cast<int>(frame.size()) == rank) break;
    std::vector<double> trial = frame_rows;
    trial.insert(trial.end(), v1[idx].begin(), v1[idx].end());
    if (linalg::mat_rank(static_cast<int>(frame.size()) + 1, rank, trial, 1e-7) ==
        static_cast<int>(frame.size()) + 1) {
      frame.push_back(idx);
      frame_rows = std::move(trial);
    }
  }
  if (static_cast<int>(frame.size()) < rank)
    throw DegenerateInput("polytope vertices do not span the space");

  linalg::Mat m1(static_cast<std::size_t>(rank) * rank);
  for (int k = 0; k < rank; ++k)
    for (int r = 0; r < rank; ++r) m1[r * rank + k] = v1[frame[k]][r];
  linalg::Mat m1_inv;
  if (!linalg::invert(rank, m1, m1_inv)) throw DegenerateInput("frame inversion failed");

  std::vector<int> image(rank, -1);
  std::optional<LinearIsometry> result;

  auto try_assignment = [&]() {
    linalg::Mat m2(static_cast<std::size_t>(rank) * rank);
    for (int k = 0; k < rank; ++k)
      for (int r = 0; r < rank; ++r) m2[r * rank + k] = v2[image[k]][r];
    linalg::Mat map = linalg::matmul(rank, m2, m1_inv);
    if (!is_gram_orthogonal(sys, map, eps)) return false;
    std::vector<char> used(n, 0);
    for (int i = 0; i < n; ++i) {
      std::vector<double> moved = apply_matrix(rank, map, v1[i]);
      bool matched = false;
      for (int j = 0; j < n && !matched; ++j) {
        if (used[j]) continue;
        double d = 0.0;
        for (int c = 0; c < rank; ++c) d = std::max(d, std::abs(moved[c] - v2[j][c]));
        if (d <= eps) {
          used[j] = 1;
          matched = true;
        }
      }
      if (!matched) return false;
    }
    result = LinearIsometry{std::move(map), LinearIsometry::Provenance::Oracle, "oracle"};
    return true;
  };

  // Backtrack over images of the frame, pruned by pairwise Gram products.
  std::vector<char> taken(n, 0);
  std::function<bool(int)> search = [&](int k) -> bool {
    if (k == rank) return try_assignment();
    for (int j : candidates[frame[k]]) {
      if (taken[j]) continue;
      bool ok = true;
      for (int l = 0; l < k && ok; ++l)
        if (std::abs(sys.gram_dot(v1[frame[k]], v1[frame[l]]) -
                     sys.gram_dot(v2[j], v2[image[l]])) > eps)
          ok = false;
      if (!ok) continue;
      image[k] = j;
      taken[j] = 1;
      if (search(k + 1)) return true;
      taken[j] = 0;
      image[k] = -1;
    }
    return false;
  };
  search(0);
  return result;
}

CrossCheckReport verify_classification(const CoxeterSystem& sys, const BasePoint& u, int jobs) {
  auto start = std::chrono::steady_clock::now();
  CrossCheckReport report;
  report.combinatorial = classify_associahedra(sys, u);
  const auto& ces = report.combinatorial.coxeter_elts;
  const int n = static_cast<int>(ces.size());

  std::vector<Polytope> polys;
  polys.reserve(n);
  for (const auto& ce : ces) polys.push_back(associahedron(sys, ce.word, u));

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<char> witness_found(pairs.size(), 0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p)
      witness_found[p] =
          congruence_oracle(polys[pairs[p].first], polys[pairs[p].second]).has_value() ? 1 : 0;
  };
  if (jobs <= 1 || pairs.size() < 2) {
    run_range(0, pairs.size());
  } else {
    const std::size_t workers = std::min<std::size_t>(jobs, pairs.size());
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (pairs.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(pairs.size(), begin + chunk);
      if (begin >= end) break;
      futures.push_back(std::async(std::launch::async, run_range, begin, end));
    }
    for (auto& f : futures) f.get();
  }

  Dsu dsu(n);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (witness_found[p]) dsu.unite(pairs[p].first, pairs[p].second);
  report.oracle_classes = dsu_partition(dsu, n);

  report.agree = report.oracle_classes == report.combinatorial.partition();
  if (!report.agree) {
    // first pair on which the two relations differ
    Dsu comb(n);
    for (const auto& cls : report.combinatorial.classes)
      for (std::size_t k = 1; k < cls.members.size(); ++k)
        comb.unite(cls.members[0], cls.members[k]);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      bool same_comb = comb.find(pairs[p].first) == comb.find(pairs[p].second);
      if (same_comb != (witness_found[p] != 0)) {
        report.counterexample_a = pairs[p].first;
        report.counterexample_b = pairs[p].second;
        break;
      }
    }
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool ReducibleReport::ok() const {
  if (!singleton_layers_ok) return false;
  for (const auto& e : entries)
    if (!e.vertex_sets_match) return false;
  return true;
}

ReducibleReport classify_reducible(const CoxeterSystem& sys, const BasePoint& u) {
  if (sys.is_irreducible()) throw NotReducible("system has a single component");
  auto start = std::chrono::steady_clock::now();
  const auto& components = sys.components();
  const int ncomp = static_cast<int>(components.size());
  auto ces = coxeter_elements(sys);

  ReducibleReport report;
  report.singleton_layers_ok = true;

  for (const auto& ce : ces) {
    Polytope reference = associahedron(sys, ce.word, u);
    SingletonLattice lattice = c_singletons(sys, ce.word);

    for (int mask = 0; mask < (1 << ncomp); ++mask) {
      std::vector<int> subset;
      std::vector<char> in_subset(sys.rank(), 0);
      for (int comp = 0; comp < ncomp; ++comp)
        if (mask & (1 << comp)) {
          subset.push_back(comp);
          for (int s : components[comp]) in_subset[s] = 1;
        }

      // w_A: longest element of the parabolic on the chosen components.
      GroupElement w_a = GroupElement::identity(sys);
      bool moved = true;
      while (moved) {
        moved = false;
        for (int s = 0; s < sys.rank(); ++s)
          if (in_subset[s] && w_a.root_image(s) > 0) {
            w_a = mul_gen(w_a, s);
            moved = true;
            break;
          }
      }
      if (!lattice.nodes.empty() && lattice.node_index(w_a) < 0)
        report.singleton_layers_ok = false;

      // c^A: reverse the subsequence of A-letters inside c's word.
      Word ca = ce.word;
      std::vector<int> positions;
      for (std::size_t p = 0; p < ca.letters.size(); ++p)
        if (in_subset[ca.letters[p]]) positions.push_back(static_cast<int>(p));
      for (std::size_t k = 0; k < positions.size() / 2; ++k)
        std::swap(ca.letters[positions[k]], ca.letters[positions[positions.size() - 1 - k]]);

      GroupElement conj = compose(compose(w_a, evaluate(sys, ca)), w_a);
      Word conj_word = reduced_word(conj);
      validate_coxeter_word(sys, conj_word);

      Polytope other = associahedron(sys, conj_word, u);
      std::vector<double> ga = element_matrix(w_a);
      std::vector<std::vector<double>> mapped;
      mapped.reserve(other.vertices.size());
      for (const auto& v : other.vertices)
        mapped.push_back(apply_matrix(sys.rank(), ga, v));

      ReducibleReport::Entry entry;
      entry.c = ce.word;
      entry.component_subset = subset;
      entry.conjugated = conj_word;
      entry.vertex_sets_match =
          vertex_sets_equal(reference.vertices, mapped, kDefaultEpsilon, &entry.max_deviation);
      report.entries.push_back(std::move(entry));
    }
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace coxassoc
