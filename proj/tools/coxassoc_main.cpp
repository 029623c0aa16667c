// coxassoc: build permutahedra and generalized associahedra for finite
// Coxeter systems, enumerate c-singletons, and classify which Coxeter
// elements yield isometric associahedra (with an optional geometric
// cross-check).
//
// Exit codes: 0 ok, 2 invalid configuration, 3 non-finite input,
// 4 oracle disagreement.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "coxassoc/io.hpp"

namespace {

using namespace coxassoc;

struct CommonOptions {
  std::string type_code;
  std::string matrix_path;
  std::string c_csv;
  std::string kappa = "balanced";
  double epsilon = kDefaultEpsilon;
  std::string emit = "json";
  std::string out_path;
  bool verify_oracle = false;
  int jobs = 1;
  std::string which = "ass";
};

void add_system_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--type", opt.type_code, "named type code, e.g. A3, H3, I2(7), A2xA1");
  cmd->add_option("--matrix", opt.matrix_path, "path to a Coxeter matrix JSON file");
  cmd->add_option("--kappa", opt.kappa, "\"balanced\" or a comma list of positive rationals");
  cmd->add_option("--epsilon", opt.epsilon, "geometric tolerance, in (0, 1e-3]");
  cmd->add_option("--out", opt.out_path, "write output to a file instead of stdout");
}

CoxeterSystem load_system(const CommonOptions& opt) {
  if (opt.type_code.empty() == opt.matrix_path.empty())
    throw InvalidConfig("give exactly one of --type or --matrix");
  if (!opt.type_code.empty()) return build_named(opt.type_code);
  std::ifstream in(opt.matrix_path);
  if (!in) throw InvalidConfig("cannot open matrix file: " + opt.matrix_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  MatrixInput parsed = parse_matrix_json(buffer.str());
  return build_system(parsed.m, parsed.labels);
}

double resolve_epsilon(const CommonOptions& opt, bool flag_given) {
  double eps = opt.epsilon;
  if (!flag_given) {
    if (const char* env = std::getenv("COXASSOC_EPSILON")) {
      try {
        eps = std::stod(env);
      } catch (...) {
        throw InvalidConfig("COXASSOC_EPSILON is not a number");
      }
    }
  }
  if (!(eps > 0) || eps > 1e-3) throw InvalidConfig("epsilon must lie in (0, 1e-3]");
  return eps;
}

void write_output(const CommonOptions& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path);
  if (!out) throw InvalidConfig("cannot open output file: " + opt.out_path);
  out << text;
}

int cmd_inspect(const CommonOptions& opt) {
  CoxeterSystem sys = load_system(opt);
  InspectData data;
  data.sys = &sys;
  data.group_order = group_order(sys, 1000000);
  data.w0_word = reduced_word(longest_element(sys));
  data.coxeter_elts = coxeter_elements(sys);
  data.automorphisms = graph_automorphisms(sys);
  write_output(opt, inspect_to_json(data));
  return 0;
}

int cmd_singletons(const CommonOptions& opt) {
  CoxeterSystem sys = load_system(opt);
  Word c = parse_word(sys, opt.c_csv);
  SingletonLattice lattice = c_singletons(sys, c);
  if (opt.emit == "dot")
    write_output(opt, lattice_to_dot(sys, c, lattice));
  else if (opt.emit == "json")
    write_output(opt, lattice_to_json(sys, c, lattice));
  else
    throw InvalidConfig("singletons supports --emit json|dot");
  return 0;
}

int cmd_polytope(const CommonOptions& opt, bool eps_given) {
  CoxeterSystem sys = load_system(opt);
  double eps = resolve_epsilon(opt, eps_given);
  BasePoint u = base_point(sys, parse_kappa(opt.kappa, sys.rank()));

  Polytope poly;
  std::optional<Word> c;
  std::string kind;
  if (opt.which == "perm") {
    poly = permutahedron(sys, u);
    poly.epsilon = eps;
    kind = "permutahedron";
  } else if (opt.which == "ass") {
    c = parse_word(sys, opt.c_csv);
    auto halfspaces = admissible_halfspaces(sys, *c, u);
    poly = polytope_from_halfspaces(sys, std::move(halfspaces), eps);
    kind = "associahedron";
  } else if (opt.which == "p") {
    poly = apex_polytope(sys, u);
    poly.epsilon = eps;
    kind = "apex";
  } else {
    throw InvalidConfig("--which must be ass, perm, or p");
  }

  if (opt.emit == "off")
    write_output(opt, polytope_to_off(poly));
  else if (opt.emit == "json")
    write_output(opt, polytope_to_json(poly, u, kind, c));
  else
    throw InvalidConfig("polytope supports --emit json|off");
  return 0;
}

int cmd_classify(const CommonOptions& opt, bool eps_given) {
  CoxeterSystem sys = load_system(opt);
  double eps = resolve_epsilon(opt, eps_given);
  BasePoint u = base_point(sys, parse_kappa(opt.kappa, sys.rank()));

  if (!sys.is_irreducible()) {
    ReducibleReport report = classify_reducible(sys, u);
    write_output(opt, reducible_report_to_json(sys, u, eps, report));
    return report.ok() ? 0 : 4;
  }

  auto start = std::chrono::steady_clock::now();
  ClassifyReport report;
  report.sys = &sys;
  report.u = u;
  report.epsilon = eps;
  report.assoc = classify_associahedra(sys, u);
  report.fans = classify_cambrian_fans(sys);
  GraphAutomorphism w0conj = conjugation_by_w0(sys);
  report.fan_asserted = is_u_automorphism(w0conj, u);

  int exit_code = 0;
  if (opt.verify_oracle) {
    CrossCheckReport check = verify_classification(sys, u, opt.jobs);
    report.oracle_agreement = check.agree;
    report.counterexample_a = check.counterexample_a;
    report.counterexample_b = check.counterexample_b;
    if (!check.agree) exit_code = 4;
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  write_output(opt, classify_report_to_json(report));
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "coxassoc: permutahedra, generalized associahedra, and isometry classes "
      "for finite Coxeter systems"};
  app.require_subcommand(1);

  CommonOptions opt;
  CLI::App* inspect = app.add_subcommand("inspect", "summarize a Coxeter system");
  add_system_options(inspect, opt);

  CLI::App* singletons =
      app.add_subcommand("singletons", "emit the lattice of c-singletons (JSON or DOT)");
  add_system_options(singletons, opt);
  singletons->add_option("--c", opt.c_csv, "Coxeter word, e.g. s2,s3,s1")->required();
  singletons->add_option("--emit", opt.emit, "json|dot");

  CLI::App* polytope = app.add_subcommand("polytope", "emit a polytope (JSON or OFF)");
  add_system_options(polytope, opt);
  polytope->add_option("--c", opt.c_csv, "Coxeter word (for the associahedron)");
  polytope->add_option("--which", opt.which, "ass|perm|p (default ass)");
  polytope->add_option("--emit", opt.emit, "json|off");

  CLI::App* classify =
      app.add_subcommand("classify", "isometry classes of associahedra and Cambrian fans");
  add_system_options(classify, opt);
  classify->add_flag("--verify-oracle", opt.verify_oracle,
                     "cross-check the classification with the congruence oracle");
  classify->add_option("--jobs", opt.jobs, "parallel oracle jobs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (inspect->parsed()) return cmd_inspect(opt);
    if (singletons->parsed()) return cmd_singletons(opt);
    if (polytope->parsed())
      return cmd_polytope(opt, polytope->count("--epsilon") > 0);
    if (classify->parsed())
      return cmd_classify(opt, classify->count("--epsilon") > 0);
  } catch (const NonFinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
