// ddbb: solve, generate and benchmark decision-diagram branch and bound.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ddbb/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bool on_off(const std::string& v) { return v == "on"; }

nlohmann::json report_json(const ddbb::RunReport& r) {
  nlohmann::json j;
  j["problem"] = ddbb::problem_name(r.problem);
  j["status"] = ddbb::status_name(r.status);
  j["objective"] = r.objective ? nlohmann::json(*r.objective) : nlohmann::json(nullptr);
  j["bound"] = r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr);
  j["gap"] = r.gap;
  j["explored"] = r.explored;
  j["seconds"] = r.seconds;
  j["solution"] = r.solution;
  j["stats"] = {{"skipped_at_pop", r.stats.skipped_at_pop},
                {"pruned_at_enqueue", r.stats.pruned_at_enqueue},
                {"restricted_compiled", r.stats.restricted_compiled},
                {"relaxed_compiled", r.stats.relaxed_compiled},
                {"nodes_created", r.stats.nodes_created},
                {"rub_pruned", r.stats.rub_pruned}};
  return j;
}

std::string opt_text(const std::optional<ddbb::Value>& v) { return v ? std::to_string(*v) : "none"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-diagram branch and bound for MISP, MCP, MAX2SAT and TSPTW"};
  app.require_subcommand(1);
  const std::vector<std::string> problems{"misp", "mcp", "max2sat", "tsptw"};
  const std::vector<std::string> switches{"on", "off"};

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance to optimality");
  std::string problem;
  std::string file;
  std::optional<std::size_t> width;
  std::string rub = "on";
  std::string locb = "on";
  double timeout = 1800.0;
  std::size_t threads = 1;
  bool json = false;
  std::string dot;
  solve_cmd->add_option("problem", problem, "Problem kind")->required()->check(CLI::IsMember(problems));
  solve_cmd->add_option("file", file, "Instance file")->required();
  solve_cmd->add_option("--width", width, "Maximum layer width (default: unfixed variable count)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--rub", rub, "Rough upper bound pruning")->check(CLI::IsMember(switches));
  solve_cmd->add_option("--locb", locb, "Local bound pruning")->check(CLI::IsMember(switches));
  solve_cmd->add_option("--timeout", timeout, "Time limit in seconds")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--json", json, "Machine-readable output");
  solve_cmd->add_option("--dot", dot, "Also write the root relaxed diagram as Graphviz");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  std::string gen_problem;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string output;
  gen_cmd->add_option("problem", gen_problem, "Problem kind")->required()->check(CLI::IsMember(problems));
  gen_cmd->add_option("--n", n, "Vertices (cities for tsptw)")->required();
  gen_cmd->add_option("--p", p, "Edge probability (window spread for tsptw)")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a manifest of instances under several configurations");
  std::string manifest;
  std::string configs = "none,rub,locb,rub+locb";
  std::string timing = "on";
  std::string csv_path;
  bench_cmd->add_option("manifest", manifest, "Lines of '<problem> <path>'")->required();
  bench_cmd->add_option("--configs", configs, "Comma-separated subset of none,rub,locb,rub+locb");
  bench_cmd->add_option("--timing", timing, "Fill the seconds column")->check(CLI::IsMember(switches));
  bench_cmd->add_option("--width", width, "Maximum layer width")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--timeout", timeout, "Time limit per run in seconds")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("-o,--output", csv_path, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    ddbb::SolverConfig config;
    config.width = width;
    config.timeout_seconds = timeout;
    config.workers = threads;

    if (*solve_cmd) {
      config.rub = on_off(rub);
      config.locb = on_off(locb);
      const auto kind = ddbb::parse_problem_kind(problem);
      const std::string text = read_file(file);
      if (!dot.empty()) write_file(dot, ddbb::root_relaxed_dot(kind, text, width));
      const auto r = ddbb::solve_instance(kind, text, config);
      if (json) {
        std::cout << report_json(r).dump(2) << '\n';
      } else {
        std::cout << fmt::format("status={} gap={:.4f} objective={} bound={} explored={} seconds={:.3f}\n",
                                 ddbb::status_name(r.status), r.gap, opt_text(r.objective), opt_text(r.bound),
                                 r.explored, r.seconds);
      }
      return r.status == ddbb::Status::kOptimal ? 0 : 2;
    }

    if (*gen_cmd) {
      const auto text = ddbb::generate_instance(ddbb::parse_problem_kind(gen_problem), n, p, seed);
      if (output.empty()) {
        std::cout << text;
      } else {
        write_file(output, text);
      }
      return 0;
    }

    if (*bench_cmd) {
      const auto entries = ddbb::parse_manifest(read_file(manifest));
      ddbb::BenchOptions options;
      options.base = config;
      options.timing = on_off(timing);
      options.base_dir = std::filesystem::path(manifest).parent_path().string();
      const auto selected = ddbb::parse_configs(configs);
      if (csv_path.empty()) {
        ddbb::run_bench(entries, selected, options, std::cout, std::cerr);
      } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        ddbb::run_bench(entries, selected, options, out, std::cerr);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
