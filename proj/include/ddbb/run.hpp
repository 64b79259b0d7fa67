#pragma once

// Problem dispatch and batch runs shared by the command line tool and the
// Python module.

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddbb/instances.hpp"
#include "ddbb/problems/max2sat.hpp"
#include "ddbb/problems/mcp.hpp"
#include "ddbb/problems/misp.hpp"
#include "ddbb/problems/tsptw.hpp"
#include "ddbb/solver.hpp"

namespace ddbb {

// Parses `text` for the given problem and calls f(model, relaxation).
template <class F>
decltype(auto) with_problem(ProblemKind kind, std::string_view text, F&& f) {
  switch (kind) {
    case ProblemKind::kMisp: {
      const misp::Model model(parse_graph(text));
      return f(model, misp::Relaxation{});
    }
    case ProblemKind::kMcp: {
      const mcp::Model model(parse_graph(text));
      return f(model, mcp::Relaxation{});
    }
    case ProblemKind::kMax2Sat: {
      const max2sat::Model model(parse_wcnf(text));
      return f(model, max2sat::Relaxation{});
    }
    case ProblemKind::kTsptw: {
      const tsptw::Model model(parse_tsptw(text));
      return f(model, tsptw::Relaxation{});
    }
  }
  throw std::invalid_argument("unknown problem");
}

// Solver outcome in the problem's own objective sense (TSPTW makespans are
// positive). objective is empty when no feasible solution is known, bound
// when no finite bound is known.
struct RunReport {
  ProblemKind problem = ProblemKind::kMisp;
  Status status = Status::kOptimal;
  std::optional<Value> objective;
  std::optional<Value> bound;
  double gap = 0.0;
  std::size_t explored = 0;
  double seconds = 0.0;
  std::vector<int> solution;  // value of each variable, in order
  SolverStats stats;
};

std::string_view status_name(Status status);

RunReport solve_instance(ProblemKind problem, std::string_view text, const SolverConfig& config);

// Graphviz rendering of the relaxed diagram compiled at the root.
std::string root_relaxed_dot(ProblemKind problem, std::string_view text, std::optional<std::size_t> width);

struct ManifestEntry {
  ProblemKind problem = ProblemKind::kMisp;
  std::string path;
};

// One "problem path" pair per line; blank lines and '#' comments skipped.
std::vector<ManifestEntry> parse_manifest(std::string_view text);

struct NamedConfig {
  std::string name;
  bool rub = true;
  bool locb = true;
};

// The four pruning configurations: none, rub, locb, rub+locb.
std::vector<NamedConfig> standard_configs();
// Comma-separated subset of the names above.
std::vector<NamedConfig> parse_configs(std::string_view list);

inline constexpr std::string_view kBenchHeader = "instance,problem,config,status,objective,bound,gap,explored,seconds";

struct BenchOptions {
  SolverConfig base;
  bool timing = true;  // off leaves the seconds column empty
  std::string base_dir;  // relative manifest paths resolve against it
};

// Writes the header and one row per (instance, config). Unreadable
// instances are reported on `log` and skipped. Returns the number of
// instances that could not be run.
std::size_t run_bench(const std::vector<ManifestEntry>& entries, const std::vector<NamedConfig>& configs,
                      const BenchOptions& options, std::ostream& csv, std::ostream& log);

std::string csv_row(const std::string& instance, const std::string& config, const RunReport& report, bool timing);

}  // namespace ddbb
