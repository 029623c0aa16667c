#include "coxassoc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "linalg.hpp"

namespace coxassoc {

using json = nlohmann::ordered_json;

namespace {

json round_vec(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round_sig(x));
  return out;
}

json round_matrix(int rank, const std::vector<double>& m) {
  json out = json::array();
  for (int r = 0; r < rank; ++r) {
    json row = json::array();
    for (int c = 0; c < rank; ++c) row.push_back(round_sig(m[r * rank + c]));
    out.push_back(std::move(row));
  }
  return out;
}

std::string provenance_name(LinearIsometry::Provenance p) {
  switch (p) {
    case LinearIsometry::Provenance::PhiMu: return "phi_mu";
    case LinearIsometry::Provenance::ElementAction: return "element_action";
    case LinearIsometry::Provenance::Composition: return "composition";
    case LinearIsometry::Provenance::Oracle: return "oracle";
  }
  return "unknown";
}

json classification_json(const CoxeterSystem& sys, const Classification& cls) {
  json classes = json::array();
  for (const auto& c : cls.classes) {
    json members = json::array();
    for (int m : c.members) members.push_back(word_to_string(sys, cls.coxeter_elts[m].word));
    json witnesses = json::array();
    for (const auto& w : c.witnesses) {
      json item;
      item["from"] = word_to_string(sys, cls.coxeter_elts[w.from].word);
      item["to"] = word_to_string(sys, cls.coxeter_elts[w.to].word);
      item["provenance"] = provenance_name(w.iso.provenance);
      item["detail"] = w.iso.detail;
      item["matrix"] = round_matrix(sys.rank(), w.iso.matrix);
      witnesses.push_back(std::move(item));
    }
    json entry;
    entry["members"] = std::move(members);
    entry["witnesses"] = std::move(witnesses);
    classes.push_back(std::move(entry));
  }
  return classes;
}

}  // namespace

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

MatrixInput parse_matrix_json(const std::string& text) {
  json data;
  try {
    data = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("matrix JSON parse error: ") + e.what());
  }
  if (!data.is_object() || !data.contains("m") || !data["m"].is_array())
    throw InvalidConfig("matrix JSON must be an object with an \"m\" array");
  MatrixInput out;
  for (const auto& row : data["m"]) {
    if (!row.is_array()) throw InvalidConfig("matrix rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw InvalidConfig("matrix entries must be integers");
      r.push_back(v.get<int>());
    }
    out.m.push_back(std::move(r));
  }
  if (data.contains("labels")) {
    for (const auto& l : data["labels"]) {
      if (!l.is_string()) throw InvalidConfig("labels must be strings");
      out.labels.push_back(l.get<std::string>());
    }
  }
  return out;
}

std::vector<double> parse_kappa(const std::string& text, int rank) {
  if (text == "balanced" || text.empty()) return std::vector<double>(rank, 1.0);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    double value = 0.0;
    std::size_t slash = token.find('/');
    try {
      if (slash == std::string::npos) {
        value = std::stod(token);
      } else {
        double num = std::stod(token.substr(0, slash));
        double den = std::stod(token.substr(slash + 1));
        if (den == 0.0) throw InvalidConfig("kappa denominator is zero");
        value = num / den;
      }
    } catch (const InvalidConfig&) {
      throw;
    } catch (...) {
      throw InvalidConfig("bad kappa entry: " + token);
    }
    if (!(value > 0)) throw InvalidConfig("kappa entries must be positive");
    out.push_back(value);
  }
  if (static_cast<int>(out.size()) != rank)
    throw InvalidConfig("kappa list length must equal the rank");
  return out;
}

std::string lattice_to_json(const CoxeterSystem& sys, const Word& c,
                            const SingletonLattice& lattice) {
  json out;
  out["c"] = word_to_string(sys, c);
  out["labels"] = sys.labels();
  json nodes = json::array();
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
    json node;
    node["id"] = i;
    node["word"] = word_to_string(sys, lattice.nodes[i].word);
    node["length"] = lattice.nodes[i].element.length();
    nodes.push_back(std::move(node));
  }
  out["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& [a, b] : lattice.hasse_edges) edges.push_back(json::array({a, b}));
  out["edges"] = std::move(edges);
  out["node_count"] = lattice.nodes.size();
  out["edge_count"] = lattice.hasse_edges.size();
  return out.dump(2) + "\n";
}

std::string lattice_to_dot(const CoxeterSystem& sys, const Word& c,
                           const SingletonLattice& lattice) {
  std::ostringstream os;
  os << "digraph singletons {\n";
  os << "  rankdir=BT;\n";
  os << "  label=\"c = " << word_to_string(sys, c) << "\";\n";
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << word_to_string(sys, lattice.nodes[i].word)
       << "\",shape=box];\n";
  for (const auto& [a, b] : lattice.hasse_edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string polytope_to_json(const Polytope& poly, const BasePoint& u, const std::string& kind,
                             const std::optional<Word>& c) {
  const CoxeterSystem& sys = *poly.sys;
  json out;
  out["kind"] = kind;
  out["rank"] = sys.rank();
  out["labels"] = sys.labels();
  if (c) out["c"] = word_to_string(sys, *c);
  out["kappa"] = round_vec(u.kappa);
  out["epsilon"] = poly.epsilon;
  json vertices = json::array();
  for (const auto& v : poly.vertices) vertices.push_back(round_vec(v));
  out["vertices"] = std::move(vertices);
  json facets = json::array();
  for (std::size_t f = 0; f < poly.halfspaces.size(); ++f) {
    const auto& h = poly.halfspaces[f];
    json facet;
    facet["label"] =
        json{{"x", word_to_string(sys, reduced_word(h.coset_rep))}, {"s", sys.label(h.s)}};
    facet["normal"] = round_vec(h.normal);
    facet["offset"] = round_sig(h.offset);
    json ids = json::array();
    for (std::size_t v = 0; v < poly.vertices.size(); ++v)
      if (poly.incidence.at(static_cast<int>(f), static_cast<int>(v))) ids.push_back(v);
    facet["vertex_ids"] = std::move(ids);
    facets.push_back(std::move(facet));
  }
  out["facets"] = std::move(facets);
  out["f_vector"] = f_vector(poly);
  return out.dump(2) + "\n";
}

std::string polytope_to_off(const Polytope& poly) {
  const CoxeterSystem& sys = *poly.sys;
  const int rank = sys.rank();
  if (rank > 3) throw InvalidConfig("OFF export supports rank <= 3");
  if (rank < 2) throw InvalidConfig("OFF export needs rank >= 2");

  // Orthonormal frame: y = L^T x with G = L L^T, so dot products in y
  // equal Gram products in x and viewers show the true shape.
  linalg::Mat chol;
  if (!linalg::cholesky(rank, sys.gram_matrix(), chol))
    throw SingularGram("Gram matrix is not positive definite");
  auto embed = [&](const std::vector<double>& x) {
    std::vector<double> y(3, 0.0);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c) y[r] += chol[c * rank + r] * x[c];
    return y;
  };

  std::vector<std::vector<double>> pts;
  pts.reserve(poly.vertices.size());
  for (const auto& v : poly.vertices) pts.push_back(embed(v));
  std::vector<double> center(3, 0.0);
  for (const auto& p : pts)
    for (int c = 0; c < 3; ++c) center[c] += p[c] / static_cast<double>(pts.size());

  // Facet polygons with vertices in cyclic order.
  std::vector<std::vector<int>> faces;
  if (rank == 2) {
    std::vector<int> ids(pts.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      return std::atan2(pts[a][1] - center[1], pts[a][0] - center[0]) <
             std::atan2(pts[b][1] - center[1], pts[b][0] - center[0]);
    });
    faces.push_back(std::move(ids));
  } else {
    for (int f = 0; f < static_cast<int>(poly.halfspaces.size()); ++f) {
      std::vector<int> ids;
      for (int v = 0; v < static_cast<int>(pts.size()); ++v)
        if (poly.incidence.at(f, v)) ids.push_back(v);
      if (ids.size() < 3) continue;
      std::vector<double> fcenter(3, 0.0);
      for (int v : ids)
        for (int c = 0; c < 3; ++c) fcenter[c] += pts[v][c] / static_cast<double>(ids.size());
      std::vector<double> normal = embed(poly.halfspaces[f].normal);
      // in-plane frame (u1, u2)
      std::vector<double> u1(3), u2(3);
      for (int c = 0; c < 3; ++c) u1[c] = pts[ids[0]][c] - fcenter[c];
      u2 = {normal[1] * u1[2] - normal[2] * u1[1], normal[2] * u1[0] - normal[0] * u1[2],
            normal[0] * u1[1] - normal[1] * u1[0]};
      auto angle = [&](int v) {
        double x = 0, y = 0;
        for (int c = 0; c < 3; ++c) {
          x += (pts[v][c] - fcenter[c]) * u1[c];
          y += (pts[v][c] - fcenter[c]) * u2[c];
        }
        return std::atan2(y, x);
      };
      std::sort(ids.begin(), ids.end(), [&](int a, int b) { return angle(a) < angle(b); });
      // counterclockwise seen from outside
      std::vector<double> e1(3), e2(3);
      for (int c = 0; c < 3; ++c) {
        e1[c] = pts[ids[1]][c] - pts[ids[0]][c];
        e2[c] = pts[ids[2]][c] - pts[ids[0]][c];
      }
      std::vector<double> cross = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                                   e1[0] * e2[1] - e1[1] * e2[0]};
      double outward = 0;
      for (int c = 0; c < 3; ++c) outward += cross[c] * (fcenter[c] - center[c]);
      if (outward < 0) std::reverse(ids.begin(), ids.end());
      faces.push_back(std::move(ids));
    }
  }

  long long edge_count = 0;
  for (const auto& face : faces) edge_count += static_cast<long long>(face.size());
  edge_count /= 2;
  if (rank == 2) edge_count = static_cast<long long>(faces[0].size());

  std::ostringstream os;
  os << "OFF\n" << pts.size() << " " << faces.size() << " " << edge_count << "\n";
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof(buf), "%.12g %.12g %.12g\n", round_sig(p[0]), round_sig(p[1]),
                  round_sig(p[2]));
    os << buf;
  }
  for (const auto& face : faces) {
    os << face.size();
    for (int v : face) os << " " << v;
    os << "\n";
  }
  return os.str();
}

std::string inspect_to_json(const InspectData& data) {
  const CoxeterSystem& sys = *data.sys;
  json out;
  out["rank"] = sys.rank();
  out["labels"] = sys.labels();
  out["coxeter_matrix"] = sys.coxeter_matrix();
  json comps = json::array();
  for (const auto& comp : sys.components()) {
    json one = json::array();
    for (int s : comp) one.push_back(sys.label(s));
    comps.push_back(std::move(one));
  }
  out["components"] = std::move(comps);
  out["positive_roots"] = sys.num_positive_roots();
  if (data.group_order)
    out["group_order"] = *data.group_order;
  else
    out["group_order"] = nullptr;
  out["longest_word"] = word_to_string(sys, data.w0_word);
  out["longest_length"] = data.w0_word.size();
  json ces = json::array();
  for (const auto& ce : data.coxeter_elts) ces.push_back(word_to_string(sys, ce.word));
  out["coxeter_elements"] = std::move(ces);
  out["coxeter_element_count"] = data.coxeter_elts.size();
  json autos = json::array();
  for (const auto& mu : data.automorphisms) {
    json image = json::array();
    for (int s = 0; s < sys.rank(); ++s) image.push_back(sys.label(mu.apply(s)));
    autos.push_back(std::move(image));
  }
  out["graph_automorphisms"] = std::move(autos);
  out["automorphism_count"] = data.automorphisms.size();
  return out.dump(2) + "\n";
}

std::string classify_report_to_json(const ClassifyReport& report) {
  const CoxeterSystem& sys = *report.sys;
  json out;
  out["rank"] = sys.rank();
  out["labels"] = sys.labels();
  out["kappa"] = round_vec(report.u.kappa);
  out["epsilon"] = report.epsilon;
  out["classes"] = classification_json(sys, report.assoc);
  out["fan_classes"] = classification_json(sys, report.fans);
  out["fan_asserted"] = report.fan_asserted;
  if (report.oracle_agreement)
    out["oracle_agreement"] = *report.oracle_agreement;
  else
    out["oracle_agreement"] = nullptr;
  if (report.counterexample_a >= 0) {
    out["counterexample"] =
        json::array({word_to_string(sys, report.assoc.coxeter_elts[report.counterexample_a].word),
                     word_to_string(sys, report.assoc.coxeter_elts[report.counterexample_b].word)});
  }
  out["runtime_ms"] = round_sig(report.runtime_ms, 6);
  return out.dump(2) + "\n";
}

std::string reducible_report_to_json(const CoxeterSystem& sys, const BasePoint& u, double epsilon,
                                     const ReducibleReport& report) {
  json out;
  out["rank"] = sys.rank();
  out["labels"] = sys.labels();
  json comps = json::array();
  for (const auto& comp : sys.components()) {
    json one = json::array();
    for (int s : comp) one.push_back(sys.label(s));
    comps.push_back(std::move(one));
  }
  out["components"] = std::move(comps);
  out["kappa"] = round_vec(u.kappa);
  out["epsilon"] = epsilon;
  json entries = json::array();
  for (const auto& e : report.entries) {
    json one;
    one["c"] = word_to_string(sys, e.c);
    one["component_subset"] = e.component_subset;
    one["conjugated"] = word_to_string(sys, e.conjugated);
    one["vertex_sets_match"] = e.vertex_sets_match;
    one["max_deviation"] = round_sig(e.max_deviation, 3);
    entries.push_back(std::move(one));
  }
  out["entries"] = std::move(entries);
  out["singleton_layers_ok"] = report.singleton_layers_ok;
  out["ok"] = report.ok();
  out["runtime_ms"] = round_sig(report.runtime_ms, 6);
  return out.dump(2) + "\n";
}

}  // namespace coxassoc
