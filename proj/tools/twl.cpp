// twl: generators, solvers, verifiers and the witness lab on the command line.
// Exit status: 0 definitive answer, 1 input error, 2 unknown (budget exhausted).

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twl/biclique.hpp"
#include "twl/family.hpp"
#include "twl/graph.hpp"
#include "twl/io.hpp"
#include "twl/lab/pipeline.hpp"
#include "twl/lab/step1.hpp"
#include "twl/lab/witness.hpp"
#include "twl/sequence.hpp"
#include "twl/solver.hpp"
#include "twl/treewidth.hpp"
#include "twl/wall.hpp"

namespace {

using namespace twl;
using nlohmann::json;

constexpr int exit_ok = 0, exit_input = 1, exit_unknown = 2;

struct Input {
  std::ifstream file;
  std::istream* in = &std::cin;
  explicit Input(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw invalid_input("cannot open " + path);
    in = &file;
  }
};

// Prefixes parse errors with the file name.
template <class F>
auto load(const std::string& path, F&& read) {
  Input src(path);
  try {
    return read(*src.in);
  } catch (const io::parse_error& e) {
    throw invalid_input((path.empty() || path == "-" ? std::string("<stdin>") : path) + ":" + e.what());
  }
}

Graph load_graph(const std::string& path) {
  return load(path, [](std::istream& in) { return io::read_graph(in); });
}

ContractionSequence load_sequence(const std::string& path) {
  return load(path, [](std::istream& in) { return io::read_sequence(in); });
}

lab::PartQuad parse_parts(const std::string& s) {
  lab::PartQuad x{};
  std::stringstream ss(s);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i == 4) throw invalid_input("--parts takes exactly four ids");
    try {
      x[i++] = std::stoi(tok);
    } catch (const std::exception&) {
      throw invalid_input("--parts: '" + tok + "' is not an integer");
    }
  }
  if (i != 4) throw invalid_input("--parts takes exactly four ids");
  return x;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

json witness_json(const lab::WitnessState& w) {
  return {{"parts", w.parts}, {"s", w.s}, {"step", w.step}, {"t", w.t}, {"w2", w.w2}, {"w3", w.w3}};
}

struct Options {
  int N = 0, cols = 0, d = 0, cap = 0, t = 1, k = 0, m = 0;
  long long budget = default_search_budget;
  unsigned long long seed = 1;
  double p = 0.3;
  std::string graph, seq, td, partition, mesh, mesh_out, parts;
};

int gen(const std::string& what, const Options& o) {
  if (o.N < 1) throw invalid_input("-N must be positive");
  if (what == "wall") {
    io::write_graph(std::cout, gen_wall(o.N).graph, {"wall " + std::to_string(o.N)});
  } else if (what == "mesh") {
    auto w = gen_wall(2 * o.N + 2);
    auto me = wall_to_mesh(w.graph, w.labels, o.N);
    io::write_graph(std::cout, w.graph, {"wall " + std::to_string(2 * o.N + 2) + " carrying a mesh of size " + std::to_string(o.N)});
    if (!o.mesh_out.empty()) {
      std::ofstream out(o.mesh_out);
      if (!out) throw invalid_input("cannot write " + o.mesh_out);
      out << io::to_json(me).dump() << '\n';
    }
  } else if (what == "tww3family") {
    io::write_graph(std::cout, gen_tww3_family(o.N).graph, {"tww3 family " + std::to_string(o.N)});
  } else if (what == "tww3family-seq") {
    std::cout << io::to_json(tww3_family_sequence(o.N)).dump() << '\n';
  } else if (what == "grid") {
    io::write_graph(std::cout, gen_grid(o.N, o.cols > 0 ? o.cols : o.N));
  } else if (what == "random") {
    if (o.p < 0 || o.p > 1) throw invalid_input("--p must lie in [0,1]");
    std::mt19937_64 rng(o.seed);
    std::bernoulli_distribution coin(o.p);
    Graph g(o.N);
    for (int u = 0; u < o.N; ++u)
      for (int v = u + 1; v < o.N; ++v)
        if (coin(rng)) g.add_edge(u, v);
    std::ostringstream p;
    p << o.p;
    io::write_graph(std::cout, g, {"random n=" + std::to_string(o.N) + " p=" + p.str() + " seed=" + std::to_string(o.seed)});
  } else {
    throw invalid_input("unknown generator " + what);
  }
  return exit_ok;
}

int tww(const std::string& what, const Options& o) {
  if (what == "verify") {
    auto s = load_sequence(o.seq);
    auto g = load_graph(o.graph);
    auto w = verify_width(g, s);
    std::cout << "width: " << w.width << '\n' << io::to_json(w).dump() << '\n';
    return exit_ok;
  }
  auto g = load_graph(o.graph);
  if (what == "decide") {
    auto r = decide_twinwidth_at_most(g, o.d, o.budget);
    const char* name = r.decision == Decision::yes ? "yes" : r.decision == Decision::no ? "no" : "unknown";
    std::cout << "decision: " << name << '\n';
    if (r.certificate) std::cout << io::to_json(*r.certificate).dump() << '\n';
    return r.decision == Decision::unknown ? exit_unknown : exit_ok;
  }
  if (what == "exact") {
    auto r = twinwidth_exact(g, o.cap, o.budget);
    if (r.status == ExactResult::Status::exact) {
      std::cout << "tww: " << r.value << '\n' << io::to_json(*r.certificate).dump() << '\n';
      return exit_ok;
    }
    if (r.status == ExactResult::Status::above_cap) {
      std::cout << "tww: >" << o.cap << '\n';
      return exit_ok;
    }
    std::cout << "tww: unknown (budget exhausted after " << r.expanded << " states)\n";
    return exit_unknown;
  }
  if (what == "zero") {
    auto s = twinwidth_zero(g);
    std::cout << "tww0: " << (s ? "yes" : "no") << '\n';
    if (s) std::cout << io::to_json(*s).dump() << '\n';
    return exit_ok;
  }
  if (what == "greedy") {
    auto r = greedy_sequence(g);
    std::cout << "width: " << r.width << '\n' << io::to_json(r.sequence).dump() << '\n';
    return exit_ok;
  }
  throw invalid_input("unknown tww command " + what);
}

int treewidth(const Options& o) {
  auto g = load_graph(o.graph);
  auto r = treewidth_exact(g, o.budget);
  if (r.status != TreewidthResult::Status::exact) {
    std::cout << "tw: unknown (" << r.lower << " <= tw <= " << r.upper << ")\n";
    io::write_td(std::cout, r.decomposition, g.num_vertices());
    return exit_unknown;
  }
  std::cout << "tw: " << r.value << '\n';
  io::write_td(std::cout, r.decomposition, g.num_vertices());
  return exit_ok;
}

int td_verify(const Options& o) {
  auto g = load_graph(o.graph);
  int n = 0;
  auto td = load(o.td, [&](std::istream& in) { return io::read_td(in, &n); });
  if (n != g.num_vertices())
    throw invalid_input("decomposition is for " + std::to_string(n) + " vertices, graph has " + std::to_string(g.num_vertices()));
  auto c = verify_tree_decomposition(g, td);
  if (!c.valid) {
    std::cout << "invalid: " << c.violation << '\n';
    return exit_input;
  }
  std::cout << "valid, width: " << c.width << '\n';
  return exit_ok;
}

int lab_cmd(const std::string& what, const Options& o) {
  auto g = load_graph(o.graph);
  auto load_partition = [&] {
    return load(o.partition, [&](std::istream& in) { return io::read_partition(in, g.num_vertices()); });
  };
  if (what == "red-edges") {
    auto pt = quotient(g, load_partition());
    auto v = lab::check_obs_red_edge(pt, o.t);
    json out = json::array();
    for (const auto& x : v)
      out.push_back({{"parts", {x.first + 1, x.second + 1}}, {"sizes", {x.first_size, x.second_size}}});
    std::cout << "violations: " << v.size() << '\n' << out.dump() << '\n';
    return exit_ok;
  }
  if (what == "witness") {
    auto p = load_partition();
    auto x = parse_parts(o.parts);
    for (int& id : x) --id;  // partition lines are numbered from 1
    auto c = lab::check_witness(g, p, x, o.t);
    if (!c) {
      std::cout << "witness: invalid (" << c.detail << ")\n";
      return exit_ok;
    }
    auto w = witness_json(*c.state);
    for (auto& id : w["parts"]) id = id.get<int>() + 1;
    std::cout << "witness: valid\n" << w.dump() << '\n';
    return exit_ok;
  }
  if (what == "audit") {
    auto s = load_sequence(o.seq);
    auto r = lab::audit_sequence(g, s, o.m, parse_parts(o.parts), o.t);
    json trail = json::array();
    for (const auto& rep : r.trail) trail.push_back({{"case", rep.case_label}, {"verdict", lab::to_string(rep.verdict)}});
    std::cout << "verdict: " << lab::to_string(r.verdict) << " at step " << r.step << '\n';
    print_json({{"reason", r.reason}, {"step", r.step}, {"trail", trail}, {"verdict", lab::to_string(r.verdict)}});
    return exit_ok;
  }
  if (what == "step1") {
    auto s = load_sequence(o.seq);
    auto me = load(o.mesh, [](std::istream& in) { return io::read_mesh(in); });
    auto r = lab::find_step1_witness(g, invert(g, s), me, o.k, o.t);
    json j{{"found", r.found}, {"m", r.m}, {"stage", r.stage}, {"used_columns", r.used_columns}};
    if (r.found) {
      j["parts"] = r.parts;
      j["s"] = r.s;
      j["witness_valid"] = r.witness_valid;
    } else {
      j["line_count_flag"] = r.line_count_flag;
      j["menger_contradiction"] = r.menger_contradiction;
    }
    std::cout << (r.found ? "found" : "NOT_FOUND") << ": " << r.stage << '\n';
    print_json(j);
    return exit_ok;
  }
  if (what == "pipeline") {
    auto r = lab::pipeline_certify(g, o.t, o.k, o.budget);
    std::cout << lab::to_string(r.status);
    if (r.status == lab::PipelineResult::Status::tww_exceeds_2) std::cout << " (conditional: gate k is an input)";
    std::cout << '\n';
    json j{{"status", lab::to_string(r.status)}, {"bound", r.bound}, {"conditional", r.conditional}};
    if (r.certificate) {
      j["certificate"] = io::to_json(*r.certificate);
      j["width"] = r.width;
    }
    if (r.biclique) j["biclique"] = {{"left", r.biclique->left}, {"right", r.biclique->right}};
    print_json(j);
    if (r.status == lab::PipelineResult::Status::gate_unknown) return exit_unknown;
    if (r.status == lab::PipelineResult::Status::width_bound_missed) return exit_input;
    return exit_ok;
  }
  throw invalid_input("unknown lab command " + what);
}

int dot(const Options& o) {
  auto g = load_graph(o.graph);
  if (o.partition.empty()) {
    io::write_dot(std::cout, Trigraph(g));
  } else {
    auto p = load(o.partition, [&](std::istream& in) { return io::read_partition(in, g.num_vertices()); });
    io::write_dot(std::cout, quotient(g, p).quotient);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twin-width and tree-width toolkit"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* g = app.add_subcommand("gen", "generate a graph (DIMACS) or a sequence (JSON)");
  std::string gen_what;
  g->add_option("kind", gen_what, "wall|mesh|tww3family|tww3family-seq|grid|random")->required()
      ->check(CLI::IsMember({"wall", "mesh", "tww3family", "tww3family-seq", "grid", "random"}));
  g->add_option("-N", o.N, "size parameter")->required();
  g->add_option("--cols", o.cols, "grid columns (default N)");
  g->add_option("--p", o.p, "edge probability for random graphs");
  g->add_option("--seed", o.seed, "seed for random graphs");
  g->add_option("--mesh-out", o.mesh_out, "write the mesh embedding JSON here (mesh only)");
  g->callback([&] { action = [&] { return gen(gen_what, o); }; });

  auto* t = app.add_subcommand("tww", "twin-width");
  t->require_subcommand(1);
  auto tww_sub = [&](const std::string& name, const std::string& help) {
    auto* s = t->add_subcommand(name, help);
    s->add_option("graph", o.graph, "graph file (default stdin)");
    s->add_option("--budget", o.budget, "search state budget")->check(CLI::PositiveNumber);
    s->callback([&, name] { action = [&, name] { return tww(name, o); }; });
    return s;
  };
  tww_sub("verify", "replay a sequence and report its width")->add_option("--seq", o.seq, "sequence JSON")->required();
  tww_sub("decide", "is the twin-width at most d")->add_option("-d", o.d, "width bound")->required()->check(CLI::NonNegativeNumber);
  tww_sub("exact", "exact twin-width up to a cap")->add_option("--cap", o.cap, "largest width tried")->required()->check(CLI::NonNegativeNumber);
  tww_sub("zero", "twin-width 0 test");
  tww_sub("greedy", "greedy contraction sequence");

  auto* tw = app.add_subcommand("treewidth", "exact tree-width with a PACE decomposition");
  tw->add_option("graph", o.graph, "graph file (default stdin)");
  tw->add_option("--budget", o.budget, "search state budget")->check(CLI::PositiveNumber);
  tw->callback([&] { action = [&] { return treewidth(o); }; });

  auto* td = app.add_subcommand("td", "tree decompositions");
  td->require_subcommand(1);
  auto* tdv = td->add_subcommand("verify", "check a PACE decomposition");
  tdv->add_option("graph", o.graph, "graph file")->required();
  tdv->add_option("td", o.td, "decomposition file")->required();
  tdv->callback([&] { action = [&] { return td_verify(o); }; });

  auto* lab = app.add_subcommand("lab", "witness machinery");
  lab->require_subcommand(1);
  auto lab_sub = [&](const std::string& name, const std::string& help) {
    auto* s = lab->add_subcommand(name, help);
    s->add_option("graph", o.graph, "graph file")->required();
    s->callback([&, name] { action = [&, name] { return lab_cmd(name, o); }; });
    return s;
  };
  auto* obs = lab_sub("red-edges", "black quotient edges between parts of size >= t");
  obs->add_option("partition", o.partition, "partition file")->required();
  obs->add_option("-t", o.t, "size threshold")->check(CLI::NonNegativeNumber);
  auto* wit = lab_sub("witness", "check a witness; parts are partition line numbers");
  wit->add_option("partition", o.partition, "partition file")->required();
  wit->add_option("--parts", o.parts, "X1,X2,X3,X4")->required();
  wit->add_option("-t", o.t, "size threshold")->check(CLI::NonNegativeNumber);
  auto* aud = lab_sub("audit", "run the invariant automaton; parts are part ids of P^m");
  aud->add_option("sequence", o.seq, "sequence JSON")->required();
  aud->add_option("--witness-at", o.m, "partition index m")->required();
  aud->add_option("--parts", o.parts, "X1,X2,X3,X4")->required();
  aud->add_option("-t", o.t, "size threshold")->check(CLI::NonNegativeNumber);
  auto* st = lab_sub("step1", "search a witness from a mesh");
  st->add_option("sequence", o.seq, "sequence JSON")->required();
  st->add_option("mesh", o.mesh, "mesh JSON")->required();
  st->add_option("-k", o.k, "mesh threshold")->required()->check(CLI::PositiveNumber);
  st->add_option("-t", o.t, "size threshold")->check(CLI::NonNegativeNumber);
  auto* pipe = lab_sub("pipeline", "K_tt test, tree-width gate, sequence construction");
  pipe->add_option("-t", o.t, "biclique size")->check(CLI::PositiveNumber);
  pipe->add_option("-k", o.k, "tree-width gate")->required()->check(CLI::NonNegativeNumber);
  pipe->add_option("--budget", o.budget, "search state budget")->check(CLI::PositiveNumber);

  auto* d = app.add_subcommand("dot", "DOT export of a graph or of a partition quotient");
  d->add_option("graph", o.graph, "graph file (default stdin)");
  d->add_option("--partition", o.partition, "partition file");
  d->callback([&] { action = [&] { return dot(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
}
