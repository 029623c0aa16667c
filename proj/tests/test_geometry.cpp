#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "coxassoc/geometry.hpp"
#include "test_support.hpp"

using namespace coxassoc;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool contains_point(const std::vector<std::vector<double>>& pts, const std::vector<double>& p,
                    double eps = 1e-9) {
  for (const auto& q : pts)
    if (max_abs_diff(p, q) <= eps) return true;
  return false;
}

}  // namespace

TEST_CASE("fundamental weights pair to the identity") {
  for (const char* code : {"A2", "A3", "B3", "H3", "D4"}) {
    auto sys = build_named(code);
    auto weights = fundamental_weights(sys);
    for (int s = 0; s < sys.rank(); ++s)
      for (int t = 0; t < sys.rank(); ++t) {
        std::vector<double> alpha(sys.rank(), 0.0);
        alpha[s] = 1.0;
        CHECK(sys.gram_dot(weights[t], alpha) ==
              doctest::Approx(s == t ? 1.0 : 0.0).epsilon(1e-9));
      }
  }
}

TEST_CASE("duality identity v_s = sum_r <v_r, v_s> alpha_r") {
  auto sys = build_named("A2");
  auto weights = fundamental_weights(sys);
  for (int s = 0; s < sys.rank(); ++s) {
    std::vector<double> rebuilt(sys.rank(), 0.0);
    for (int r = 0; r < sys.rank(); ++r) {
      double coeff = sys.gram_dot(weights[r], weights[s]);
      rebuilt[r] += coeff;  // alpha_r is the r-th basis vector
    }
    CHECK(max_abs_diff(rebuilt, weights[s]) < 1e-9);
  }
}

TEST_CASE("fundamental weights need not share length in A3") {
  auto sys = build_named("A3");
  auto weights = fundamental_weights(sys);
  double n1 = sys.gram_dot(weights[0], weights[0]);
  double n2 = sys.gram_dot(weights[1], weights[1]);
  CHECK(std::abs(n1 - n2) > 1e-6);
}

TEST_CASE("orbit points") {
  auto sys = build_named("A2");
  auto u = balanced_point(sys);
  CHECK(max_abs_diff(orbit_point(GroupElement::identity(sys), u), u.coords) == 0.0);
  // balanced: M(w0) = -M(e)
  auto m_w0 = orbit_point(longest_element(sys), u);
  for (int c = 0; c < sys.rank(); ++c) CHECK(m_w0[c] == doctest::Approx(-u.coords[c]));
}

TEST_CASE("base point validation") {
  auto sys = build_named("A2");
  CHECK_THROWS_AS(base_point(sys, {1.0}), InvalidConfig);
  CHECK_THROWS_AS(base_point(sys, {1.0, -2.0}), InvalidConfig);
  CHECK(base_point(sys, {1.0, 2.0}).balanced() == false);
  CHECK(balanced_point(sys).balanced());
}

TEST_CASE("permutahedron of A2 is a hexagon") {
  auto sys = build_named("A2");
  auto u = balanced_point(sys);
  auto poly = permutahedron(sys, u);
  CHECK(poly.vertices.size() == 6);
  CHECK(poly.halfspaces.size() == 6);
  // enumeration from the halfspaces alone reproduces the orbit
  auto verts = enumerate_vertices(sys, poly.halfspaces);
  CHECK(verts.size() == 6);
  for (const auto& v : poly.vertices) CHECK(contains_point(verts, v));
}

TEST_CASE("permutahedron counts for A3 and B3") {
  auto a3 = build_named("A3");
  auto pa = permutahedron(a3, balanced_point(a3));
  CHECK(pa.vertices.size() == 24);
  CHECK(pa.halfspaces.size() == 14);  // 4 + 6 + 4 by coset enumeration
  auto b3 = build_named("B3");
  auto pb = permutahedron(b3, balanced_point(b3));
  CHECK(pb.vertices.size() == 48);

  // each vertex lies on exactly rank facets
  for (std::size_t v = 0; v < pa.vertices.size(); ++v) {
    int on = 0;
    for (std::size_t f = 0; f < pa.halfspaces.size(); ++f)
      if (pa.incidence.at(static_cast<int>(f), static_cast<int>(v))) ++on;
    CHECK(on == a3.rank());
  }
}

TEST_CASE("label equality agrees with geometric hyperplane coincidence") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto weights = fundamental_weights(sys);
    auto elements = enumerate_group(sys);
    auto hs = permutahedron_halfspaces(sys, u);
    // rebuild the halfspace of every (w, s) pair and find its geometric twin
    for (const auto& w : elements) {
      auto matrix = element_matrix(w);
      for (int s = 0; s < sys.rank(); ++s) {
        auto normal = apply_matrix(sys.rank(), matrix, weights[s]);
        int geometric_matches = 0, label_matches = 0;
        for (const auto& h : hs) {
          if (h.s == s && max_abs_diff(h.normal, normal) < 1e-9) ++geometric_matches;
          std::vector<int> parabolic;
          for (int t = 0; t < sys.rank(); ++t)
            if (t != s) parabolic.push_back(t);
          if (h.s == s && min_coset_rep(w, parabolic) == h.coset_rep) ++label_matches;
        }
        CHECK(geometric_matches == 1);
        CHECK(label_matches == 1);
      }
    }
  }
}

TEST_CASE("permutahedron incidence from coset labels matches numeric incidence") {
  for (const char* code : {"B2", "A3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto poly = permutahedron(sys, u);
    for (std::size_t f = 0; f < poly.halfspaces.size(); ++f) {
      const auto& h = poly.halfspaces[f];
      for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
        bool numeric = std::abs(sys.gram_dot(poly.vertices[v], h.normal) - h.offset) < 1e-9;
        CHECK(numeric == poly.incidence.at(static_cast<int>(f), static_cast<int>(v)));
      }
    }
  }
}

TEST_CASE("admissible halfspaces of A2 leave a pentagon") {
  auto sys = build_named("A2");
  auto u = balanced_point(sys);
  CHECK(admissible_halfspaces(sys, Word{{0, 1}}, u).size() == 5);
  auto poly = associahedron(sys, Word{{0, 1}}, u);
  CHECK(poly.vertices.size() == 5);
  CHECK(poly.halfspaces.size() == 5);
}

TEST_CASE("halfspaces at e and w0 always survive") {
  for (const char* code : {"A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto w0 = longest_element(sys);
    for (const auto& ce : coxeter_elements(sys)) {
      auto hs = admissible_halfspaces(sys, ce.word, u);
      for (int s = 0; s < sys.rank(); ++s) {
        std::vector<int> parabolic;
        for (int t = 0; t < sys.rank(); ++t)
          if (t != s) parabolic.push_back(t);
        auto rep_e = min_coset_rep(GroupElement::identity(sys), parabolic);
        auto rep_w0 = min_coset_rep(w0, parabolic);
        int found = 0;
        for (const auto& h : hs)
          if (h.s == s && (h.coset_rep == rep_e || h.coset_rep == rep_w0)) ++found;
        CHECK(found == 2);
      }
    }
  }
}

TEST_CASE("A3 associahedron has facet count 9 for c = s2 s3 s1") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  CHECK(admissible_halfspaces(sys, Word{{1, 2, 0}}, u).size() == 9);
}

TEST_CASE("associahedron counts and Euler relation") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  for (const auto& ce : coxeter_elements(sys)) {
    auto poly = associahedron(sys, ce.word, u);
    auto f = f_vector(poly);
    CHECK(f == std::vector<long long>{14, 21, 9});
    CHECK(f[0] - f[1] + f[2] == 2);
  }
}

TEST_CASE("associahedron contains the permutahedron pointwise") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto perm = permutahedron(sys, u);
    for (const auto& ce : coxeter_elements(sys)) {
      auto hs = admissible_halfspaces(sys, ce.word, u);
      for (const auto& v : perm.vertices)
        for (const auto& h : hs) CHECK(sys.gram_dot(v, h.normal) <= h.offset + 1e-9);
    }
  }
}

TEST_CASE("singleton orbit points are vertices of the associahedron") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    for (const auto& ce : coxeter_elements(sys)) {
      auto poly = associahedron(sys, ce.word, u);
      for (const auto& node : c_singletons(sys, ce.word).nodes)
        CHECK(contains_point(poly.vertices, orbit_point(node.element, u)));
    }
  }
}

TEST_CASE("facets are irredundant: incident vertices span each hyperplane") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  auto poly = associahedron(sys, Word{{1, 2, 0}}, u);
  for (std::size_t f = 0; f < poly.halfspaces.size(); ++f) {
    std::vector<std::vector<double>> on_facet;
    for (std::size_t v = 0; v < poly.vertices.size(); ++v)
      if (poly.incidence.at(static_cast<int>(f), static_cast<int>(v)))
        on_facet.push_back(poly.vertices[v]);
    REQUIRE(on_facet.size() >= 3);
    std::vector<double> diffs;
    for (std::size_t i = 1; i < on_facet.size(); ++i)
      for (int c = 0; c < sys.rank(); ++c) diffs.push_back(on_facet[i][c] - on_facet[0][c]);
    // affine hull of the facet's vertices has dimension rank-1
    int rows = static_cast<int>(on_facet.size()) - 1;
    int rank = 0;
    {
      // tiny rank computation via Gram-Schmidt style elimination
      std::vector<std::vector<double>> basis;
      for (int r = 0; r < rows; ++r) {
        std::vector<double> v(diffs.begin() + r * sys.rank(),
                              diffs.begin() + (r + 1) * sys.rank());
        for (const auto& b : basis) {
          double num = 0, den = 0;
          for (int c = 0; c < sys.rank(); ++c) {
            num += v[c] * b[c];
            den += b[c] * b[c];
          }
          for (int c = 0; c < sys.rank(); ++c) v[c] -= num / den * b[c];
        }
        double norm = 0;
        for (int c = 0; c < sys.rank(); ++c) norm += v[c] * v[c];
        if (norm > 1e-12) {
          basis.push_back(v);
          ++rank;
        }
      }
    }
    CHECK(rank == sys.rank() - 1);
  }
}

TEST_CASE("apex polytope") {
  auto a2 = build_named("A2");
  auto u2 = balanced_point(a2);
  auto p2 = apex_polytope(a2, u2);
  CHECK(p2.halfspaces.size() == 4);
  CHECK(p2.vertices.size() == 4);  // a quadrilateral

  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto p = apex_polytope(sys, u);
    // contains the permutahedron
    auto perm = permutahedron(sys, u);
    for (const auto& v : perm.vertices)
      for (const auto& h : p.halfspaces) CHECK(sys.gram_dot(v, h.normal) <= h.offset + 1e-9);
    // M(e) and M(w0) are vertices lying on rank facets each
    auto m_e = u.coords;
    auto m_w0 = orbit_point(longest_element(sys), u);
    CHECK(contains_point(p.vertices, m_e));
    CHECK(contains_point(p.vertices, m_w0));
    for (const auto& target : {m_e, m_w0}) {
      int on = 0;
      for (const auto& h : p.halfspaces)
        if (std::abs(sys.gram_dot(target, h.normal) - h.offset) < 1e-9) ++on;
      CHECK(on == sys.rank());
    }
  }
}

TEST_CASE("enumerate_vertices detects cones") {
  auto sys = build_named("A2");
  auto u = balanced_point(sys);
  auto p = apex_polytope(sys, u);
  // dropping one halfspace of the quadrilateral leaves an unbounded wedge
  std::vector<Halfspace> wedge(p.halfspaces.begin(), p.halfspaces.end() - 1);
  CHECK_THROWS_AS(enumerate_vertices(sys, wedge), UnboundedOrDegenerate);
  std::vector<Halfspace> too_few(p.halfspaces.begin(), p.halfspaces.begin() + 1);
  CHECK_THROWS_AS(enumerate_vertices(sys, too_few), UnboundedOrDegenerate);
}

TEST_CASE("normal cones") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  auto perm = permutahedron(sys, u);
  auto cones = normal_cones(perm);
  CHECK(cones.size() == perm.vertices.size());
  auto ass = associahedron(sys, Word{{1, 2, 0}}, u);
  CHECK(normal_cones(ass).size() == 14);
  // cone at M(e) is spanned by the fundamental weights
  auto weights = fundamental_weights(sys);
  const auto& cone_e = cones[0];  // identity is the first enumerated element
  REQUIRE(perm.vertex_elements[0].is_identity());
  REQUIRE(cone_e.rays.size() == static_cast<std::size_t>(sys.rank()));
  for (const auto& w : weights) {
    bool found = false;
    for (const auto& ray : cone_e.rays)
      if (max_abs_diff(ray, w) < 1e-9) found = true;
    CHECK(found);
  }
}

TEST_CASE("exactly one antipodal singleton cone pair, at e and w0") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto w0 = longest_element(sys);
    for (const auto& ce : coxeter_elements(sys)) {
      auto poly = associahedron(sys, ce.word, u);
      auto cones = normal_cones(poly);
      auto lattice = c_singletons(sys, ce.word);
      // map singletons to vertex ids
      std::vector<int> singleton_vertex;
      std::vector<GroupElement> singleton_elem;
      for (const auto& node : lattice.nodes) {
        auto p = orbit_point(node.element, u);
        for (std::size_t v = 0; v < poly.vertices.size(); ++v)
          if (max_abs_diff(poly.vertices[v], p) < 1e-9) {
            singleton_vertex.push_back(static_cast<int>(v));
            singleton_elem.push_back(node.element);
          }
      }
      REQUIRE(singleton_vertex.size() == lattice.nodes.size());
      // antipodal pairs among singleton cones: ray sets negate each other
      auto normalize = [&](std::vector<double> v) {
        double n = std::sqrt(sys.gram_dot(v, v));
        for (auto& x : v) x /= n;
        return v;
      };
      int antipodal_pairs = 0;
      std::pair<int, int> found{-1, -1};
      for (std::size_t a = 0; a < singleton_vertex.size(); ++a)
        for (std::size_t b = a + 1; b < singleton_vertex.size(); ++b) {
          const auto& ca = cones[singleton_vertex[a]].rays;
          const auto& cb = cones[singleton_vertex[b]].rays;
          if (ca.size() != cb.size()) continue;
          bool all_matched = true;
          std::vector<char> used(cb.size(), 0);
          for (const auto& ra : ca) {
            auto na = normalize(ra);
            bool matched = false;
            for (std::size_t j = 0; j < cb.size() && !matched; ++j) {
              if (used[j]) continue;
              auto nb = normalize(cb[j]);
              for (auto& x : nb) x = -x;
              if (max_abs_diff(na, nb) < 1e-9) {
                used[j] = 1;
                matched = true;
              }
            }
            if (!matched) {
              all_matched = false;
              break;
            }
          }
          if (all_matched) {
            ++antipodal_pairs;
            found = {static_cast<int>(a), static_cast<int>(b)};
          }
        }
      CHECK(antipodal_pairs == 1);
      bool e_and_w0 =
          (singleton_elem[found.first].is_identity() && singleton_elem[found.second] == w0) ||
          (singleton_elem[found.second].is_identity() && singleton_elem[found.first] == w0);
      CHECK(e_and_w0);
    }
  }
}

TEST_CASE("vertex_sets_equal") {
  std::vector<std::vector<double>> a{{0, 0}, {1, 0}};
  std::vector<std::vector<double>> b{{1, 0}, {0, 0}};
  double dev = 0;
  CHECK(vertex_sets_equal(a, b, 1e-9, &dev));
  CHECK(dev == 0.0);
  b[0][0] = 1.5;
  CHECK(!vertex_sets_equal(a, b, 1e-9));
  CHECK(!vertex_sets_equal(a, {{0, 0}}, 1e-9));
}

TEST_CASE("rank-4 f-vector satisfies Euler") {
  auto sys = build_named("D4");
  auto u = balanced_point(sys);
  auto ce = coxeter_elements(sys)[0];
  auto poly = associahedron(sys, ce.word, u);
  auto f = f_vector(poly);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == 50);
  CHECK(f[0] - f[1] + f[2] - f[3] == 0);
}
