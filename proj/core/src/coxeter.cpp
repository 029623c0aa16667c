#include "coxassoc/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace coxassoc {

namespace {

// s(v) = v - 2<v, a_s> a_s; only coordinate s changes.
std::vector<double> reflect_vector(const CoxeterSystem& sys, int s, std::vector<double> v) {
  double t = 0.0;
  for (int c = 0; c < sys.rank(); ++c) t += sys.gram(s, c) * v[c];
  v[s] -= 2.0 * t;
  return v;
}

int find_root(const std::vector<std::vector<double>>& roots, const std::vector<double>& v,
              double eps) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double d = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) d = std::max(d, std::abs(roots[i][c] - v[c]));
    if (d < eps) return static_cast<int>(i);
  }
  return -1;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int CoxeterSystem::label_index(const std::string& name) const {
  for (int i = 0; i < rank_; ++i)
    if (labels_[i] == name) return i;
  return -1;
}

double CoxeterSystem::gram_dot(const std::vector<double>& x, const std::vector<double>& y) const {
  double acc = 0.0;
  for (int r = 0; r < rank_; ++r) {
    double row = 0.0;
    for (int c = 0; c < rank_; ++c) row += gram_[r * rank_ + c] * y[c];
    acc += x[r] * row;
  }
  return acc;
}

CoxeterSystem build_system(const CoxeterMatrix& m, std::vector<std::string> labels,
                           const BuildOptions& opts) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw InvalidMatrix("empty Coxeter matrix");
  for (int r = 0; r < n; ++r)
    if (static_cast<int>(m[r].size()) != n) throw InvalidMatrix("Coxeter matrix is not square");
  for (int r = 0; r < n; ++r) {
    if (m[r][r] != 1) throw InvalidMatrix("m(s,s) must be 1");
    for (int c = 0; c < n; ++c) {
      if (m[r][c] != m[c][r]) throw InvalidMatrix("Coxeter matrix must be symmetric");
      if (r != c && m[r][c] != 0 && m[r][c] < 2)
        throw InvalidMatrix("off-diagonal entries must be >= 2 (0 for an infinite bond)");
    }
  }
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels.size()) != n) throw InvalidMatrix("label count does not match rank");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (labels[i] == labels[j]) throw InvalidMatrix("duplicate generator label");

  CoxeterSystem sys;
  sys.rank_ = n;
  sys.labels_ = std::move(labels);
  sys.matrix_ = m;

  sys.gram_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double value;
      if (r == c)
        value = 1.0;
      else if (m[r][c] == 0)
        value = -1.0;  // infinite bond
      else if (m[r][c] == 2)
        value = 0.0;
      else
        value = -std::cos(std::numbers::pi / m[r][c]);
      sys.gram_[r * n + c] = value;
    }

  // Close {a_s} under the simple reflections.  Applying s to a positive
  // root other than a_s yields another positive root, so tracking the
  // positive side only is enough.
  const int cap = 2 * opts.root_cap;
  auto& roots = sys.roots_;
  for (int s = 0; s < n; ++s) {
    std::vector<double> e(n, 0.0);
    e[s] = 1.0;
    roots.push_back(std::move(e));
  }
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) queue.push_back(i);
  std::vector<std::vector<int32_t>> tables(n);
  for (int s = 0; s < n; ++s) tables[s].assign(n, 0);
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int s = 0; s < n; ++s) {
      if (i == s) {
        tables[s][i] = -(i + 1);
        continue;
      }
      if (tables[s][i] != 0) continue;
      std::vector<double> image = reflect_vector(sys, s, roots[i]);
      int j = find_root(roots, image, opts.snap_epsilon);
      if (j < 0) {
        if (static_cast<int>(roots.size()) >= cap)
          throw NonFinite("root closure exceeded its bound; the group is not finite");
        j = static_cast<int>(roots.size());
        roots.push_back(std::move(image));
        for (int t = 0; t < n; ++t) tables[t].push_back(0);
        queue.push_back(j);
      }
      tables[s][i] = j + 1;
      tables[s][j] = i + 1;
    }
  }
  sys.tables_ = std::move(tables);

  Dsu dsu(n);
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (m[r][c] != 2) dsu.unite(r, c);
  std::unordered_map<int, int> comp_id;
  for (int s = 0; s < n; ++s) {
    int root = dsu.find(s);
    auto [it, fresh] = comp_id.emplace(root, static_cast<int>(sys.components_.size()));
    if (fresh) sys.components_.emplace_back();
    sys.components_[it->second].push_back(s);
  }
  return sys;
}

namespace {

CoxeterMatrix chain_matrix(int n, const std::vector<std::pair<int, int>>& special_bonds) {
  CoxeterMatrix m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  for (auto [i, bond] : special_bonds) m[i][i + 1] = m[i + 1][i] = bond;
  return m;
}

CoxeterMatrix irreducible_matrix(const std::string& code) {
  if (code.size() >= 2 && code[0] == 'I') {
    // I2(m)
    if (code.size() < 5 || code.substr(0, 3) != "I2(" || code.back() != ')')
      throw InvalidConfig("bad dihedral type code: " + code);
    int m = std::stoi(code.substr(3, code.size() - 4));
    if (m < 3) throw InvalidConfig("I2(m) needs m >= 3");
    return CoxeterMatrix{{1, m}, {m, 1}};
  }
  char family = code[0];
  int n = 0;
  try {
    n = std::stoi(code.substr(1));
  } catch (...) {
    throw InvalidConfig("bad type code: " + code);
  }
  switch (family) {
    case 'A':
      if (n < 1) throw InvalidConfig("A_n needs n >= 1");
      return chain_matrix(n, {});
    case 'B':
    case 'C':
      if (n < 2) throw InvalidConfig("B_n needs n >= 2");
      return chain_matrix(n, {{n - 2, 4}});
    case 'D': {
      if (n < 4) throw InvalidConfig("D_n needs n >= 4");
      // chain s1..s_{n-1} with the extra node s_n forking at s_{n-2}
      CoxeterMatrix m = chain_matrix(n, {});
      m[n - 2][n - 1] = m[n - 1][n - 2] = 2;
      m[n - 3][n - 1] = m[n - 1][n - 3] = 3;
      return m;
    }
    case 'E': {
      if (n < 6 || n > 8) throw InvalidConfig("E_n needs n in {6,7,8}");
      // chain s1..s_{n-1} with s_n attached to s3
      CoxeterMatrix m = chain_matrix(n, {});
      m[n - 2][n - 1] = m[n - 1][n - 2] = 2;
      m[2][n - 1] = m[n - 1][2] = 3;
      return m;
    }
    case 'F':
      if (n != 4) throw InvalidConfig("only F4 exists");
      return chain_matrix(4, {{1, 4}});
    case 'G':
      if (n != 2) throw InvalidConfig("only G2 exists");
      return CoxeterMatrix{{1, 6}, {6, 1}};
    case 'H':
      if (n != 3 && n != 4) throw InvalidConfig("H_n needs n in {3,4}");
      return chain_matrix(n, {{0, 5}});
    default:
      throw InvalidConfig("unknown type family: " + code);
  }
}

}  // namespace

CoxeterMatrix direct_product(const std::vector<CoxeterMatrix>& factors) {
  int total = 0;
  for (const auto& f : factors) total += static_cast<int>(f.size());
  CoxeterMatrix m(total, std::vector<int>(total, 2));
  int offset = 0;
  for (const auto& f : factors) {
    int n = static_cast<int>(f.size());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[offset + r][offset + c] = f[r][c];
    offset += n;
  }
  return m;
}

CoxeterMatrix named_matrix(const std::string& type_code) {
  std::vector<CoxeterMatrix> factors;
  std::size_t pos = 0;
  while (pos < type_code.size()) {
    std::size_t next = type_code.find('x', pos);
    // 'x' inside "I2(..)" cannot occur; plain split is fine
    std::string part =
        type_code.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part.empty()) throw InvalidConfig("bad type code: " + type_code);
    factors.push_back(irreducible_matrix(part));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (factors.empty()) throw InvalidConfig("empty type code");
  if (factors.size() == 1) return factors[0];
  return direct_product(factors);
}

CoxeterSystem build_named(const std::string& type_code, const BuildOptions& opts) {
  return build_system(named_matrix(type_code), {}, opts);
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::identity(const CoxeterSystem& sys) {
  std::vector<int32_t> image(sys.num_positive_roots());
  for (int i = 0; i < sys.num_positive_roots(); ++i) image[i] = i + 1;
  return GroupElement(&sys, std::move(image), 0);
}

GroupElement GroupElement::generator(const CoxeterSystem& sys, int s) {
  std::vector<int32_t> image(sys.num_positive_roots());
  for (int i = 0; i < sys.num_positive_roots(); ++i) image[i] = sys.reflect_root(s, i);
  return GroupElement(&sys, std::move(image), 1);
}

bool GroupElement::left_descent(int s) const {
  const int32_t target = -(s + 1);
  for (int32_t v : image_)
    if (v == target) return true;
  return false;
}

GroupElement GroupElement::inverse() const {
  std::vector<int32_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    int32_t v = image_[i];
    int j = std::abs(v) - 1;
    inv[j] = v > 0 ? static_cast<int32_t>(i + 1) : -static_cast<int32_t>(i + 1);
  }
  return GroupElement(sys_, std::move(inv), length_);
}

std::size_t GroupElement::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int32_t v : image_) {
    h ^= static_cast<std::size_t>(static_cast<uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.sys_ != b.sys_) throw SystemMismatch("elements belong to different systems");
  std::vector<int32_t> image(a.image_.size());
  int length = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    int32_t bi = b.image_[i];
    int32_t ai = a.image_[std::abs(bi) - 1];
    int32_t v = bi > 0 ? ai : -ai;
    image[i] = v;
    if (v < 0) ++length;
  }
  return GroupElement(a.sys_, std::move(image), length);
}

GroupElement mul_gen(const GroupElement& w, int s) {
  const CoxeterSystem& sys = *w.sys_;
  std::vector<int32_t> image(w.image_.size());
  int length = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    int32_t si = sys.reflect_root(s, static_cast<int>(i));
    int32_t wi = w.image_[std::abs(si) - 1];
    int32_t v = si > 0 ? wi : -wi;
    image[i] = v;
    if (v < 0) ++length;
  }
  return GroupElement(w.sys_, std::move(image), length);
}

GroupElement gen_mul(int s, const GroupElement& w) {
  const CoxeterSystem& sys = *w.sys_;
  std::vector<int32_t> image(w.image_.size());
  int length = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    int32_t wi = w.image_[i];
    int32_t si = sys.reflect_root(s, std::abs(wi) - 1);
    int32_t v = wi > 0 ? si : -si;
    image[i] = v;
    if (v < 0) ++length;
  }
  return GroupElement(w.sys_, std::move(image), length);
}

GroupElement evaluate(const CoxeterSystem& sys, const Word& w) {
  GroupElement g = GroupElement::identity(sys);
  for (int s : w.letters) {
    if (s < 0 || s >= sys.rank()) throw InvalidConfig("word letter out of range");
    g = mul_gen(g, s);
  }
  return g;
}

bool is_reduced(const CoxeterSystem& sys, const Word& w) {
  return evaluate(sys, w).length() == static_cast<int>(w.size());
}

Word reduced_word(const GroupElement& w) {
  Word out;
  GroupElement g = w;
  const int rank = w.system().rank();
  while (!g.is_identity()) {
    int s = -1;
    for (int t = 0; t < rank; ++t)
      if (g.left_descent(t)) {
        s = t;
        break;
      }
    out.letters.push_back(s);
    g = gen_mul(s, g);
  }
  return out;
}

Word parse_word(const CoxeterSystem& sys, const std::string& csv) {
  Word out;
  if (csv.empty() || csv == "e") return out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    int s = sys.label_index(token);
    if (s < 0) throw InvalidConfig("unknown generator label: " + token);
    out.letters.push_back(s);
  }
  return out;
}

std::string word_to_string(const CoxeterSystem& sys, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ",";
    out += sys.label(w.letters[i]);
  }
  return out;
}

std::vector<int> inversions(const GroupElement& w) {
  std::vector<int> out;
  const int n = w.system().num_positive_roots();
  for (int i = 0; i < n; ++i) {
    int32_t v = w.root_image(i);
    if (v < 0) out.push_back(-v - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupElement longest_element(const CoxeterSystem& sys) {
  GroupElement w = GroupElement::identity(sys);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s = 0; s < sys.rank(); ++s)
      if (w.root_image(s) > 0) {  // ell(w s) > ell(w)
        w = mul_gen(w, s);
        moved = true;
        break;
      }
  }
  return w;
}

std::vector<CoxeterElement> coxeter_elements(const CoxeterSystem& sys) {
  std::vector<int> perm(sys.rank());
  for (int i = 0; i < sys.rank(); ++i) perm[i] = i;
  std::vector<CoxeterElement> out;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  do {
    Word w{perm};
    GroupElement g = evaluate(sys, w);
    if (seen.insert(g).second) out.push_back(CoxeterElement{std::move(g), std::move(w)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end(),
            [](const CoxeterElement& a, const CoxeterElement& b) { return a.word < b.word; });
  return out;
}

bool GraphAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] != static_cast<int>(i)) return false;
  return true;
}

namespace {

void automorphism_backtrack(const CoxeterSystem& sys, std::vector<int>& image,
                            std::vector<char>& used, int depth,
                            std::vector<GraphAutomorphism>& out) {
  const int n = sys.rank();
  if (depth == n) {
    out.push_back(GraphAutomorphism{image});
    return;
  }
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    bool ok = true;
    for (int prev = 0; prev < depth && ok; ++prev)
      if (sys.bond(prev, depth) != sys.bond(image[prev], cand)) ok = false;
    if (!ok) continue;
    image[depth] = cand;
    used[cand] = 1;
    automorphism_backtrack(sys, image, used, depth + 1, out);
    used[cand] = 0;
  }
}

}  // namespace

std::vector<GraphAutomorphism> graph_automorphisms(const CoxeterSystem& sys) {
  std::vector<int> image(sys.rank(), -1);
  std::vector<char> used(sys.rank(), 0);
  std::vector<GraphAutomorphism> out;
  automorphism_backtrack(sys, image, used, 0, out);
  return out;  // backtracking in ascending order yields lex order
}

GraphAutomorphism conjugation_by_w0(const CoxeterSystem& sys) {
  GroupElement w0 = longest_element(sys);
  std::vector<int> map(sys.rank(), -1);
  for (int s = 0; s < sys.rank(); ++s) {
    GroupElement x = compose(compose(w0, GroupElement::generator(sys, s)), w0);
    for (int t = 0; t < sys.rank(); ++t)
      if (x == GroupElement::generator(sys, t)) {
        map[s] = t;
        break;
      }
    if (map[s] < 0) throw InvalidConfig("w0-conjugation did not permute the generators");
  }
  return GraphAutomorphism{map};
}

GroupElement apply_automorphism(const CoxeterSystem& sys, const GraphAutomorphism& mu,
                                const GroupElement& w) {
  // Letterwise on a reduced word; the result is word-independent because
  // mu preserves the defining relations.
  return evaluate(sys, apply_automorphism(mu, reduced_word(w)));
}

Word apply_automorphism(const GraphAutomorphism& mu, const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (int s : w.letters) out.letters.push_back(mu.apply(s));
  return out;
}

GroupElement min_coset_rep(const GroupElement& w, const std::vector<int>& parabolic) {
  GroupElement g = w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int t : parabolic)
      if (g.right_descent(t)) {
        g = mul_gen(g, t);
        moved = true;
        break;
      }
  }
  return g;
}

std::vector<GroupElement> enumerate_group(const CoxeterSystem& sys, std::size_t cap) {
  std::vector<GroupElement> out;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  out.push_back(GroupElement::identity(sys));
  seen.insert(out[0]);
  std::size_t frontier_begin = 0;
  while (frontier_begin < out.size()) {
    std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (int s = 0; s < sys.rank(); ++s) {
        GroupElement next = mul_gen(out[i], s);
        if (next.length() <= out[i].length()) continue;
        if (seen.insert(next).second) {
          out.push_back(std::move(next));
          if (out.size() > cap) throw InvalidConfig("group enumeration exceeded cap");
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

std::optional<std::size_t> group_order(const CoxeterSystem& sys, std::size_t cap) {
  try {
    return enumerate_group(sys, cap).size();
  } catch (const InvalidConfig&) {
    return std::nullopt;
  }
}

std::vector<double> element_matrix(const GroupElement& w) {
  const CoxeterSystem& sys = w.system();
  const int n = sys.rank();
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) {
    int32_t v = w.root_image(s);  // image of the simple root a_s
    int j = std::abs(v) - 1;
    double sign = v > 0 ? 1.0 : -1.0;
    const auto& root = sys.positive_root(j);
    for (int r = 0; r < n; ++r) m[r * n + s] = sign * root[r];
  }
  return m;
}

std::vector<double> apply_matrix(int rank, const std::vector<double>& m,
                                 const std::vector<double>& v) {
  std::vector<double> out(rank, 0.0);
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < rank; ++c) out[r] += m[r * rank + c] * v[c];
  return out;
}

}  // namespace coxassoc
