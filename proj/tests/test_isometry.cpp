#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "coxassoc/isometry.hpp"
#include "test_support.hpp"

using namespace coxassoc;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<std::vector<double>> map_points(const CoxeterSystem& sys,
                                            const std::vector<double>& m,
                                            const std::vector<std::vector<double>>& pts) {
  std::vector<std::vector<double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(apply_matrix(sys.rank(), m, p));
  return out;
}

std::set<std::set<std::string>> partition_words(const Classification& cls) {
  std::set<std::set<std::string>> out;
  for (const auto& c : cls.classes) {
    std::set<std::string> members;
    for (int m : c.members)
      members.insert(word_to_string(cls.coxeter_elts[m].element.system(),
                                    cls.coxeter_elts[m].word));
    out.insert(std::move(members));
  }
  return out;
}

Word inverse_word(const Word& w) {
  return Word{std::vector<int>(w.letters.rbegin(), w.letters.rend())};
}

}  // namespace

TEST_CASE("phi_mu basics") {
  auto sys = build_named("A3");
  auto autos = graph_automorphisms(sys);
  REQUIRE(autos.size() == 2);
  auto id_iso = automorphism_isometry(sys, autos[0]);
  for (int r = 0; r < sys.rank(); ++r)
    for (int c = 0; c < sys.rank(); ++c)
      CHECK(id_iso.matrix[r * sys.rank() + c] == (r == c ? 1.0 : 0.0));

  // phi_mu sends v_s to v_{mu(s)}
  auto weights = fundamental_weights(sys);
  for (const auto& mu : autos) {
    auto iso = automorphism_isometry(sys, mu);
    for (int s = 0; s < sys.rank(); ++s) {
      auto image = apply_matrix(sys.rank(), iso.matrix, weights[s]);
      CHECK(max_abs_diff(image, weights[mu.apply(s)]) < 1e-12);
    }
  }
}

TEST_CASE("phi_mu matrices are Gram-orthogonal for every implemented type") {
  for (const char* code : {"A2", "A3", "A4", "B3", "D4", "F4", "H3", "I2(5)", "I2(7)"}) {
    auto sys = build_named(code);
    for (const auto& mu : graph_automorphisms(sys))
      CHECK(is_gram_orthogonal(sys, automorphism_isometry(sys, mu).matrix));
  }
}

TEST_CASE("reversal of A3 maps the balanced permutahedron onto itself") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  auto mu = graph_automorphisms(sys)[1];
  REQUIRE(!mu.is_identity());
  auto perm = permutahedron(sys, u);
  auto mapped = map_points(sys, automorphism_isometry(sys, mu).matrix, perm.vertices);
  CHECK(vertex_sets_equal(perm.vertices, mapped, 1e-9));
}

TEST_CASE("u-automorphism filtering") {
  auto sys = build_named("A3");
  auto rev = graph_automorphisms(sys)[1];
  auto balanced = balanced_point(sys);
  auto generic = base_point(sys, {1.0, 2.0, 3.0});
  CHECK(is_u_automorphism(rev, balanced));
  CHECK(!is_u_automorphism(rev, generic));

  // phi_mu fixes M(e) iff mu is u-valid
  auto iso = automorphism_isometry(sys, rev);
  CHECK(max_abs_diff(apply_matrix(sys.rank(), iso.matrix, balanced.coords), balanced.coords) <
        1e-12);
  CHECK(max_abs_diff(apply_matrix(sys.rank(), iso.matrix, generic.coords), generic.coords) >
        1e-6);
}

TEST_CASE("the w0 action is an involution swapping M(e) and M(w0)") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto g = element_isometry(longest_element(sys));
    CHECK(is_gram_orthogonal(sys, g.matrix));
    auto twice = apply_matrix(sys.rank(), g.matrix,
                              apply_matrix(sys.rank(), g.matrix, u.coords));
    CHECK(max_abs_diff(twice, u.coords) < 1e-9);
    CHECK(max_abs_diff(apply_matrix(sys.rank(), g.matrix, u.coords),
                       orbit_point(longest_element(sys), u)) < 1e-9);
  }
}

TEST_CASE("g maps Ass_{w0 c^{-1} w0} onto Ass_c") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto w0 = longest_element(sys);
    auto g = element_isometry(w0);
    for (const auto& ce : coxeter_elements(sys)) {
      GroupElement conj = compose(compose(w0, ce.element.inverse()), w0);
      Word conj_word = reduced_word(conj);
      auto target = associahedron(sys, ce.word, u);
      auto source = associahedron(sys, conj_word, u);
      auto mapped = map_points(sys, g.matrix, source.vertices);
      CHECK(vertex_sets_equal(target.vertices, mapped, 1e-9));
    }
  }
}

TEST_CASE("halfspace transport by phi_mu") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  auto hs = permutahedron_halfspaces(sys, u);
  for (const auto& mu : graph_automorphisms(sys)) {
    for (const auto& h : hs) {
      auto image = transport_halfspace(sys, mu, h, u);
      CHECK(image.s == mu.apply(h.s));
      if (mu.is_identity()) {
        CHECK(image.coset_rep == h.coset_rep);
        CHECK(max_abs_diff(image.normal, h.normal) < 1e-12);
      }
    }
  }
}

TEST_CASE("transport detects offset mismatches for non-u-valid automorphisms") {
  auto sys = build_named("A3");
  auto generic = base_point(sys, {1.0, 2.0, 3.0});
  auto rev = graph_automorphisms(sys)[1];
  auto hs = permutahedron_halfspaces(sys, generic);
  bool threw = false;
  for (const auto& h : hs) {
    try {
      transport_halfspace(sys, rev, h, generic);
    } catch (const LabelGeometryMismatch&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("phi_mu(w(v_s)) = mu(w)(v_{mu(s)})") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto weights = fundamental_weights(sys);
    for (const auto& mu : graph_automorphisms(sys)) {
      auto phi = automorphism_isometry(sys, mu);
      for (const auto& w : enumerate_group(sys)) {
        auto mu_w = apply_automorphism(sys, mu, w);
        auto mu_w_matrix = element_matrix(mu_w);
        auto w_matrix = element_matrix(w);
        for (int s = 0; s < sys.rank(); ++s) {
          auto lhs = apply_matrix(sys.rank(), phi.matrix,
                                  apply_matrix(sys.rank(), w_matrix, weights[s]));
          auto rhs = apply_matrix(sys.rank(), mu_w_matrix, weights[mu.apply(s)]);
          CHECK(max_abs_diff(lhs, rhs) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("admissibility transport: h is c-admissible iff phi_mu(h) is mu(c)-admissible") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  auto hs = permutahedron_halfspaces(sys, u);
  auto label_set = [&](const Word& c) {
    std::set<std::pair<std::vector<int>, int>> out;
    for (const auto& h : admissible_halfspaces(sys, c, u))
      out.insert({reduced_word(h.coset_rep).letters, h.s});
    return out;
  };
  for (const auto& mu : graph_automorphisms(sys)) {
    for (const auto& ce : coxeter_elements(sys)) {
      Word mu_c = apply_automorphism(mu, ce.word);
      auto before = label_set(ce.word);
      auto after = label_set(mu_c);
      for (const auto& h : hs) {
        bool admissible = before.count({reduced_word(h.coset_rep).letters, h.s}) > 0;
        auto image = transport_halfspace(sys, mu, h, u);
        bool image_admissible = after.count({reduced_word(image.coset_rep).letters, image.s}) > 0;
        CHECK(admissible == image_admissible);
      }
    }
  }
}

TEST_CASE("classification of A3 at the balanced point") {
  auto sys = build_named("A3");
  auto cls = classify_associahedra(sys, balanced_point(sys));
  auto expected = std::set<std::set<std::string>>{{"s1,s2,s3", "s3,s2,s1"},
                                                  {"s1,s3,s2", "s2,s1,s3"}};
  CHECK(partition_words(cls) == expected);
}

TEST_CASE("classification of B3 and H3: classes are {c, c^{-1}}") {
  for (const char* code : {"B3", "H3"}) {
    auto sys = build_named(code);
    auto cls = classify_associahedra(sys, balanced_point(sys));
    CHECK(cls.classes.size() == 2);
    for (const auto& group : cls.classes) {
      REQUIRE(group.members.size() == 2);
      auto a = cls.coxeter_elts[group.members[0]];
      auto b = cls.coxeter_elts[group.members[1]];
      CHECK(b.element == a.element.inverse());
    }
  }
}

TEST_CASE("fan classification equals the balanced associahedron classification") {
  for (const char* code : {"A2", "A3", "B3", "H3", "D4"}) {
    auto sys = build_named(code);
    auto assoc = classify_associahedra(sys, balanced_point(sys));
    auto fans = classify_cambrian_fans(sys);
    CHECK(assoc.partition() == fans.partition());
  }
}

TEST_CASE("fan classification of A2 is a single class") {
  auto fans = classify_cambrian_fans(build_named("A2"));
  CHECK(fans.classes.size() == 1);
  CHECK(fans.classes[0].members.size() == 2);
}

TEST_CASE("witness isometries map vertex sets as claimed") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto cls = classify_associahedra(sys, u);
    for (const auto& group : cls.classes) {
      for (const auto& witness : group.witnesses) {
        auto from = associahedron(sys, cls.coxeter_elts[witness.from].word, u);
        auto to = associahedron(sys, cls.coxeter_elts[witness.to].word, u);
        auto mapped = map_points(sys, witness.iso.matrix, from.vertices);
        CHECK(vertex_sets_equal(to.vertices, mapped, 1e-9));
        CHECK(is_gram_orthogonal(sys, witness.iso.matrix));
      }
    }
  }
}

TEST_CASE("witnesses transport singleton vertices to singleton vertices") {
  for (const char* code : {"A2", "A3", "B3"}) {
    auto sys = build_named(code);
    auto u = balanced_point(sys);
    auto cls = classify_associahedra(sys, u);
    for (const auto& group : cls.classes) {
      for (const auto& witness : group.witnesses) {
        auto singletons_from = c_singletons(sys, cls.coxeter_elts[witness.from].word);
        auto singletons_to = c_singletons(sys, cls.coxeter_elts[witness.to].word);
        std::vector<std::vector<double>> target_points;
        for (const auto& node : singletons_to.nodes)
          target_points.push_back(orbit_point(node.element, u));
        for (const auto& node : singletons_from.nodes) {
          auto image =
              apply_matrix(sys.rank(), witness.iso.matrix, orbit_point(node.element, u));
          bool found = false;
          for (const auto& t : target_points)
            if (max_abs_diff(image, t) < 1e-9) found = true;
          CHECK(found);
        }
      }
    }
  }
}

TEST_CASE("congruence oracle finds the identity on equal input") {
  auto sys = build_named("A2");
  auto u = balanced_point(sys);
  auto poly = associahedron(sys, Word{{0, 1}}, u);
  auto witness = congruence_oracle(poly, poly);
  REQUIRE(witness.has_value());
  CHECK(is_gram_orthogonal(sys, witness->matrix));
}

TEST_CASE("congruence oracle on the two A2 pentagons") {
  auto sys = build_named("A2");
  auto u = balanced_point(sys);
  auto p1 = associahedron(sys, Word{{0, 1}}, u);
  auto p2 = associahedron(sys, Word{{1, 0}}, u);
  CHECK(congruence_oracle(p1, p2).has_value());
}

TEST_CASE("congruence oracle separates the two A3 classes") {
  auto sys = build_named("A3");
  auto u = balanced_point(sys);
  auto p1 = associahedron(sys, Word{{0, 1, 2}}, u);
  auto p2 = associahedron(sys, Word{{1, 0, 2}}, u);
  CHECK(!congruence_oracle(p1, p2).has_value());
}

TEST_CASE("verify_classification at the balanced point") {
  for (const char* code : {"A2", "A3"}) {
    auto sys = build_named(code);
    auto report = verify_classification(sys, balanced_point(sys));
    CHECK(report.agree);
  }
  auto a3 = build_named("A3");
  auto report = verify_classification(a3, balanced_point(a3));
  CHECK(report.combinatorial.classes.size() == 2);
}

TEST_CASE("verify_classification with one generic kappa per type") {
  for (const char* code : {"A2", "A3", "B3", "H3", "D4"}) {
    auto sys = build_named(code);
    std::vector<double> kappa;
    for (int s = 0; s < sys.rank(); ++s) kappa.push_back(1.0 + s);
    auto report = verify_classification(sys, base_point(sys, kappa), /*jobs=*/2);
    CHECK(report.agree);
    for (const auto& cls : report.combinatorial.classes) CHECK(cls.members.size() <= 2);
  }
}

TEST_CASE("balanced class cardinalities match the case analysis") {
  // one non-trivial diagram automorphism: sizes 2 or 4
  for (const char* code : {"A2", "A3", "A4", "F4", "I2(5)", "I2(6)", "I2(7)"}) {
    auto sys = build_named(code);
    for (const auto& cls : classify_associahedra(sys, balanced_point(sys)).classes)
      CHECK((cls.members.size() == 2 || cls.members.size() == 4));
  }
  // trivial automorphism group: always {c, c^{-1}}
  for (const char* code : {"B2", "B3", "B4", "H3", "H4"}) {
    auto sys = build_named(code);
    for (const auto& cls : classify_associahedra(sys, balanced_point(sys)).classes)
      CHECK(cls.members.size() == 2);
  }
  // D4: two or six
  for (const auto& cls : classify_associahedra(build_named("D4"), balanced_point(build_named("D4"))).classes)
    CHECK((cls.members.size() == 2 || cls.members.size() == 6));
}

TEST_CASE("reducible verification on A1 x A2") {
  auto sys = build_named("A1xA2");
  auto u = balanced_point(sys);
  auto report = classify_reducible(sys, u);
  CHECK(report.ok());
  CHECK(report.singleton_layers_ok);
  // subsets: {}, {A1}, {A2}, both; two Coxeter elements
  CHECK(report.entries.size() == 2 * 4);
  for (const auto& e : report.entries) {
    CHECK(e.vertex_sets_match);
    if (e.component_subset.empty()) CHECK(e.c == e.conjugated);  // g_A = id, c^A = c
  }
  CHECK_THROWS_AS(classify_reducible(build_named("A3"), balanced_point(build_named("A3"))),
                  NotReducible);
}

TEST_CASE("classifiers reject reducible input") {
  auto sys = build_named("A1xA1");
  CHECK_THROWS_AS(classify_associahedra(sys, balanced_point(sys)), InvalidConfig);
  CHECK_THROWS_AS(classify_cambrian_fans(sys), InvalidConfig);
}
