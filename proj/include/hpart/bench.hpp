#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hpart/asp_emit.hpp"
#include "hpart/catalog.hpp"
#include "hpart/errors.hpp"
#include "hpart/generators.hpp"
#include "hpart/oracle.hpp"
#include "hpart/solver.hpp"

namespace hpart {

enum class SolverKind : std::uint8_t { Poly, Oracle, External };

constexpr const char* to_string(SolverKind k) noexcept {
  switch (k) {
    case SolverKind::Poly: return "poly";
    case SolverKind::Oracle: return "oracle";
    case SolverKind::External: return "external";
  }
  return "?";
}

inline SolverKind solver_kind_from_string(std::string_view s) {
  for (auto k : {SolverKind::Poly, SolverKind::Oracle, SolverKind::External})
    if (s == to_string(k)) return k;
  throw ArgumentError("unknown solver '" + std::string(s) + "'");
}

struct BenchRecord {
  std::string model;
  std::string instance;
  int n = 0;
  std::size_t m = 0;
  SolverKind solver = SolverKind::Poly;
  bool yes = false;
  std::int64_t micros = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kBenchCsvHeader = "model,instance,n,m,solver,decision,micros,seed";

inline std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << r.model << ',' << r.instance << ',' << r.n << ',' << r.m << ',' << to_string(r.solver) << ','
     << (r.yes ? "yes" : "no") << ',' << r.micros << ',' << r.seed;
  return os.str();
}

inline std::string to_csv(const std::vector<BenchRecord>& records) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const auto& r : records) out += to_csv_row(r) + '\n';
  return out;
}

struct BenchInstance {
  std::string id;
  Graph graph{0};
  std::uint64_t seed = 0;
};

/// Reads every *.graph file of `dir`, sorted by file name. A "seed=<k>" token in
/// a header comment sets the instance seed; otherwise `default_seed` is used.
inline std::vector<BenchInstance> load_corpus(const std::filesystem::path& dir, std::uint64_t default_seed = 0) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".graph") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  static const std::regex seed_re(R"(^#.*\bseed=(\d+))");
  std::vector<BenchInstance> out;
  for (const auto& f : files) {
    const std::string text = read_file(f.string());
    BenchInstance inst{f.stem().string(), Graph(0), default_seed};
    try {
      inst.graph = parse_graph(text);
    } catch (const ParseError& e) {
      throw ParseError(0, f.string() + ": " + e.what());
    }
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      std::smatch m;
      if (std::regex_search(line, m, seed_re)) {
        inst.seed = std::stoull(m[1].str());
        break;
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

/// Runs an external ASP system on emitted program and facts files. The command
/// template has "{program}" and "{facts}" placeholders; output containing
/// "yes_instance" means yes.
class ExternalSolver {
 public:
  explicit ExternalSolver(std::string command_template, bool guess_check = false)
      : template_(std::move(command_template)), guess_check_(guess_check) {}

  bool decide(const ModelGraph& h, const Graph& g) const {
    std::string dir_template = (std::filesystem::temp_directory_path() / "hpart-XXXXXX").string();
    if (!::mkdtemp(dir_template.data())) throw std::runtime_error("cannot create a temporary directory");
    const std::filesystem::path dir(dir_template);
    const auto program_path = dir / "program.lp", facts_path = dir / "program-facts.lp";
    {
      std::ofstream(program_path) << program_for(h);
      std::ofstream(facts_path) << emit_instance_facts(h, g);
    }
    std::string cmd = template_;
    replace_all(cmd, "{program}", program_path.string());
    replace_all(cmd, "{facts}", facts_path.string());
    std::string output;
    if (FILE* pipe = ::popen(cmd.c_str(), "r")) {
      char buf[4096];
      while (std::size_t k = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, k);
      ::pclose(pipe);
    } else {
      std::filesystem::remove_all(dir);
      throw std::runtime_error("cannot run '" + cmd + "'");
    }
    std::filesystem::remove_all(dir);
    return output.find("yes_instance") != std::string::npos;
  }

 private:
  std::string program_for(const ModelGraph& h) const {
    const Strategy s = classify(h);
    if (guess_check_ || s == Strategy::OracleOnly)
      return emit_guess_check().program + "yes_instance() :- placedIn(X,P).\n";
    return emit_datalog(h, s).program;
  }

  static void replace_all(std::string& s, std::string_view from, const std::string& to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
      s.replace(pos, from.size(), to);
  }

  std::string template_;
  bool guess_check_;
};

struct BenchOptions {
  std::vector<SolverKind> solvers{SolverKind::Poly, SolverKind::Oracle};
  int repetitions = 1;
  /// Report 0 microseconds so that the CSV is reproducible.
  bool timing = true;
  std::optional<ExternalSolver> external;
  OracleOptions oracle;
  /// Worker threads; only used when timing is off.
  unsigned threads = 1;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  /// Empty unless two solvers disagreed; the run stops at the first disagreement.
  std::string discrepancy;
};

namespace detail {

/// Records for one (model, instance) pair; `discrepancy` is set when solvers disagree.
inline void bench_one(const ModelGraph& h, const BenchInstance& inst, const BenchOptions& opts,
                      std::vector<BenchRecord>& records, std::string& discrepancy) {
  std::optional<std::pair<SolverKind, bool>> reference;
  for (SolverKind kind : opts.solvers) {
    std::function<bool()> run;
    switch (kind) {
      case SolverKind::Poly: run = [&] { return solve(h, inst.graph).yes; }; break;
      case SolverKind::Oracle: run = [&] { return oracle_solve(h, inst.graph, opts.oracle).has_value(); }; break;
      case SolverKind::External:
        if (!opts.external) throw ArgumentError("external solver requested without a command");
        run = [&] { return opts.external->decide(h, inst.graph); };
        break;
    }
    const bool warm = run();
    for (int rep = 0; rep < opts.repetitions; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const bool yes = run();
      const auto t1 = std::chrono::steady_clock::now();
      const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
      if (yes != warm) throw ContractViolation("solver gave different answers on repeated runs");
      records.push_back({h.name(), inst.id, inst.graph.order(), inst.graph.size(), kind, yes,
                         opts.timing ? micros : 0, inst.seed});
    }
    if (!reference) {
      reference = {kind, warm};
    } else if (reference->second != warm) {
      discrepancy = "model " + h.name() + ", instance " + inst.id + ": " + to_string(reference->first) + " says " +
                    (reference->second ? "yes" : "no") + ", " + to_string(kind) + " says " + (warm ? "yes" : "no");
      return;
    }
  }
}

}  // namespace detail

/// Times each solver on each (model, instance) pair. One warm-up run per pair
/// is discarded; decisions of all solvers on an instance must agree. With
/// timing off, `threads` workers share the pairs; the output is the same.
inline BenchReport run_bench(const std::vector<ModelGraph>& models, const std::vector<BenchInstance>& corpus,
                             const BenchOptions& opts) {
  if (corpus.empty()) throw ArgumentError("bench corpus is empty");
  if (opts.repetitions < 1) throw ArgumentError("repetitions must be positive");
  const std::size_t jobs = models.size() * corpus.size();
  std::vector<std::vector<BenchRecord>> records(jobs);
  std::vector<std::string> discrepancies(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      try {
        detail::bench_one(models[j / corpus.size()], corpus[j % corpus.size()], opts, records[j], discrepancies[j]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned threads = opts.timing ? 1u : std::max(1u, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BenchReport report;
  for (std::size_t j = 0; j < jobs; ++j) {
    if (errors[j]) std::rethrow_exception(errors[j]);
    report.records.insert(report.records.end(), records[j].begin(), records[j].end());
    if (!discrepancies[j].empty()) {
      report.discrepancy = discrepancies[j];
      break;
    }
  }
  return report;
}

inline constexpr std::string_view kProportionCsvHeader = "model,n,sample,seed,density,m,decision,yes_count,no_count";

/// Per-sample rows followed by one summary row with sample "all".
inline std::string proportions_csv(const std::string& model, int n, std::uint64_t seed, const ProportionResult& r) {
  std::ostringstream os;
  os << kProportionCsvHeader << '\n';
  os << std::fixed << std::setprecision(6);
  for (const auto& s : r.samples)
    os << model << ',' << n << ',' << s.index << ',' << s.seed << ',' << s.density << ',' << s.edges << ','
       << (s.yes ? "yes" : "no") << ",,\n";
  os << model << ',' << n << ",all," << seed << ",,,," << r.yes << ',' << r.no << '\n';
  return os.str();
}

}  // namespace hpart
