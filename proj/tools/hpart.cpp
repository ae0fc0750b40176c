// hpart: decide, generate, emit and benchmark H-partition instances.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hpart/hpart.hpp"

namespace {

using namespace hpart;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitDiscrepancy = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HPART_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ArgumentError(std::string("HPART_SEED is not a number: ") + env);
    }
  }
  return 1;
}

Strategy parse_strategy(const std::string& name) {
  if (auto s = strategy_from_string(name)) return *s;
  throw ArgumentError("unknown strategy '" + name + "'");
}

std::string partition_lines(const Partition& p, std::string_view prefix) {
  std::string out;
  for (Label l : kLabels) {
    out += std::string(prefix) + to_upper_char(l) + ":";
    for (Vertex v : p[l]) out += " " + std::to_string(v);
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct SolveArgs {
  std::string model, graph, strategy;
  bool witness = false;
};

int cmd_solve(const SolveArgs& a) {
  const ModelGraph h = load_model(a.model);
  const Graph g = parse_graph(read_file(a.graph));
  SolveOptions opts;
  if (!a.strategy.empty()) opts.strategy = parse_strategy(a.strategy);
  const Decision d = solve(h, g, opts);
  std::cout << (d.yes ? "yes" : "no") << '\n';
  std::cout << "strategy: " << to_string(d.strategy) << '\n';
  if (d.base) std::cout << "base: " << d.base->to_string() << '\n';
  if (a.witness && d.yes) {
    const auto p = certificate(h, g);
    if (!p || !verify_partition(h, g, *p)) throw ContractViolation("no valid witness for a yes decision");
    std::cout << partition_lines(*p, "");
  }
  return d.yes ? kExitYes : kExitNo;
}

struct GenerateArgs {
  std::string kind, model, out;
  int n = 0;
  std::int64_t m = -1;
  std::optional<std::uint64_t> seed;
  bool random_sizes = false;
  int max_tries = 100;
};

int cmd_generate(const GenerateArgs& a) {
  const ModelGraph h = load_model(a.model);
  const std::uint64_t seed = a.seed.value_or(default_seed());
  std::vector<std::string> header;
  std::ostringstream prov;
  prov << "hpart generate kind=" << a.kind << " model=" << h.name() << " n=" << a.n;
  Graph g(0);
  if (a.kind == "yes") {
    if (a.m < 0) throw ArgumentError("--m is required for kind 'yes'");
    const auto inst = gen_yes(h, a.n, a.m, seed, {a.random_sizes});
    if (!inst) {
      std::cerr << "there is no such yes-instance\n";
      return kExitNo;
    }
    prov << " m=" << a.m << " seed=" << seed;
    header.push_back(prov.str());
    std::istringstream lines(partition_lines(inst->partition, "class "));
    for (std::string line; std::getline(lines, line);) header.push_back(line);
    g = inst->graph;
  } else if (a.kind == "no-trivial") {
    g = gen_no_trivial(h, a.n);
    header.push_back(prov.str());
  } else if (a.kind == "no-random") {
    const auto inst = gen_no_random(h, a.n, seed, {.max_tries = a.max_tries, .require_base = false, .density = {}});
    if (!inst) {
      std::cerr << "no no-instance found in " << a.max_tries << " tries\n";
      return kExitNo;
    }
    prov << " seed=" << seed << " density=" << inst->density << " tries=" << inst->tries;
    header.push_back(prov.str());
    g = inst->graph;
  } else {
    throw ArgumentError("unknown kind '" + a.kind + "'");
  }
  write_text(a.out, to_text(g, header));
  return 0;
}

struct EmitArgs {
  std::string model, strategy, graph, out_dir, name;
  bool guess_check = false, dot = false, check = false;
};

int cmd_emit(const EmitArgs& a) {
  const ModelGraph h = load_model(a.model);
  ProgramText p;
  if (a.guess_check) {
    p = emit_guess_check();
  } else {
    const Strategy s = a.strategy.empty() ? classify(h) : parse_strategy(a.strategy);
    p = emit_datalog(h, s);
  }
  if (a.check && p.dialect != Dialect::GuessCheck && !stratify_check(p)) {
    std::cerr << "program is not stratified\n";
    return kExitError;
  }
  std::string facts;
  if (!a.graph.empty()) facts = emit_instance_facts(h, parse_graph(read_file(a.graph)));

  if (a.out_dir.empty()) {
    std::cout << (a.dot ? to_dot(precedence_graph(p.program)) : p.program);
    if (!a.dot) std::cout << facts;
    return 0;
  }
  const std::filesystem::path dir(a.out_dir);
  std::filesystem::create_directories(dir);
  const std::string name = a.name.empty() ? h.name() : a.name;
  write_text((dir / (name + ".lp")).string(), p.program);
  if (!facts.empty()) write_text((dir / (name + "-facts.lp")).string(), facts);
  if (a.dot) write_text((dir / (name + ".dot")).string(), to_dot(precedence_graph(p.program)));
  return 0;
}

struct BenchArgs {
  std::vector<std::string> models, solvers{"poly", "oracle"};
  std::string corpus, csv, external_cmd;
  int reps = 1;
  unsigned parallel = 1;
  bool no_timing = false, external_guess_check = false;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<ModelGraph> models;
  for (const auto& m : a.models) models.push_back(load_model(m));
  BenchOptions opts;
  opts.repetitions = a.reps;
  opts.timing = !a.no_timing;
  opts.threads = a.parallel;
  if (a.parallel > 1 && opts.timing) std::cerr << "note: --parallel is ignored for timed runs\n";
  opts.solvers.clear();
  for (const auto& s : a.solvers) opts.solvers.push_back(solver_kind_from_string(s));
  if (!a.external_cmd.empty()) {
    opts.external.emplace(a.external_cmd, a.external_guess_check);
    if (std::find(opts.solvers.begin(), opts.solvers.end(), SolverKind::External) == opts.solvers.end())
      opts.solvers.push_back(SolverKind::External);
  }
  const auto report = run_bench(models, load_corpus(a.corpus, default_seed()), opts);
  write_text(a.csv, to_csv(report.records));
  if (!report.discrepancy.empty()) {
    std::cerr << "discrepancy: " << report.discrepancy << '\n';
    return kExitDiscrepancy;
  }
  return 0;
}

struct ProportionArgs {
  std::string model, csv;
  int n = 0, samples = 0;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  double mean = 0.5, sd = 0.25;
};

int cmd_proportions(const ProportionArgs& a) {
  const ModelGraph h = load_model(a.model);
  const std::uint64_t seed = a.seed.value_or(default_seed());
  ProportionOptions opts;
  opts.threads = a.threads;
  opts.density = {a.mean, a.sd};
  const auto r = proportion_experiment(h, a.n, a.samples, seed, opts);
  write_text(a.csv, proportions_csv(h.name(), a.n, seed, r));
  std::cerr << h.name() << " n=" << a.n << ": " << r.yes << " yes, " << r.no << " no\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide, generate and benchmark H-partition instances"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Decide whether GRAPH admits an H-partition");
  solve_cmd->add_option("model", sa.model, "Model file or built-in name")->required();
  solve_cmd->add_option("graph", sa.graph, "Graph file")->required();
  solve_cmd->add_option("--strategy", sa.strategy, "generic, twin, pairlock, isolated or oracle");
  solve_cmd->add_flag("--witness", sa.witness, "Print a verified partition on yes");

  GenerateArgs ga;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance");
  gen_cmd->add_option("kind", ga.kind, "yes, no-trivial or no-random")->required();
  gen_cmd->add_option("model", ga.model, "Model file or built-in name")->required();
  gen_cmd->add_option("-n", ga.n, "Number of vertices")->required();
  gen_cmd->add_option("-m", ga.m, "Number of edges (kind yes)");
  gen_cmd->add_option("--seed", ga.seed, "Random seed (default: $HPART_SEED or 1)");
  gen_cmd->add_option("-o,--out", ga.out, "Output file (default: stdout)");
  gen_cmd->add_flag("--random-sizes", ga.random_sizes, "Draw the class sizes among feasible ones");
  gen_cmd->add_option("--max-tries", ga.max_tries, "Attempts for kind no-random");

  EmitArgs ea;
  auto* emit_cmd = app.add_subcommand("emit", "Write the logic program for a model");
  emit_cmd->add_option("model", ea.model, "Model file or built-in name")->required();
  emit_cmd->add_option("--strategy", ea.strategy, "Datalog variant (default: chosen from the model)");
  emit_cmd->add_flag("--guess-check", ea.guess_check, "Emit the guess-and-check program");
  emit_cmd->add_option("--graph", ea.graph, "Also emit instance facts for this graph");
  emit_cmd->add_option("--out-dir", ea.out_dir, "Write <name>.lp and <name>-facts.lp here");
  emit_cmd->add_option("--name", ea.name, "Base file name (default: model name)");
  emit_cmd->add_flag("--dot", ea.dot, "Emit the predicate precedence graph in DOT");
  emit_cmd->add_flag("--check", ea.check, "Fail unless the program is stratified");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time solvers on a corpus of graph files");
  bench_cmd->add_option("--model", ba.models, "Model file or built-in name")->required();
  bench_cmd->add_option("--corpus", ba.corpus, "Directory of *.graph files")->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--solvers", ba.solvers, "poly, oracle, external")->delimiter(',');
  bench_cmd->add_option("--reps", ba.reps, "Timed repetitions per instance");
  bench_cmd->add_option("--csv", ba.csv, "Output CSV (default: stdout)");
  bench_cmd->add_option("--external-cmd", ba.external_cmd, "Command template with {program} and {facts}");
  bench_cmd->add_flag("--external-guess-check", ba.external_guess_check, "Give the external solver the guess-and-check program");
  bench_cmd->add_flag("--no-timing", ba.no_timing, "Write 0 in the micros column");
  bench_cmd->add_option("--parallel", ba.parallel, "Worker threads for untimed runs");

  ProportionArgs pa;
  auto* prop_cmd = app.add_subcommand("proportions", "Count yes-instances among random graphs");
  prop_cmd->add_option("model", pa.model, "Model file or built-in name")->required();
  prop_cmd->add_option("-n", pa.n, "Number of vertices")->required();
  prop_cmd->add_option("--samples", pa.samples, "Number of graphs")->required()->check(CLI::PositiveNumber);
  prop_cmd->add_option("--seed", pa.seed, "Random seed (default: $HPART_SEED or 1)");
  prop_cmd->add_option("--csv", pa.csv, "Output CSV (default: stdout)");
  prop_cmd->add_option("--threads", pa.threads, "Worker threads");
  prop_cmd->add_option("--density-mean", pa.mean, "Mean of the edge density");
  prop_cmd->add_option("--density-sd", pa.sd, "Standard deviation of the edge density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*gen_cmd) return cmd_generate(ga);
    if (*emit_cmd) return cmd_emit(ea);
    if (*bench_cmd) return cmd_bench(ba);
    if (*prop_cmd) return cmd_proportions(pa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
