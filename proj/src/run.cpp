#include "ddbb/run.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ddbb {

std::string_view status_name(Status status) { return status == Status::kOptimal ? "optimal" : "timeout"; }

RunReport solve_instance(ProblemKind problem, std::string_view text, const SolverConfig& config) {
  return with_problem(problem, text, [&](const auto& model, const auto& relaxation) {
    using M = std::decay_t<decltype(model)>;
    const Outcome out = solve(model, relaxation, config);
    const bool flip = is_minimization<M>();
    auto sense = [flip](Value v) { return flip ? -v : v; };

    RunReport r;
    r.problem = problem;
    r.status = out.status;
    if (is_finite(out.incumbent)) r.objective = sense(out.incumbent);
    if (is_finite(out.best_bound)) r.bound = sense(out.best_bound);
    r.gap = out.end_gap;
    r.explored = out.explored;
    r.seconds = out.duration.count();
    r.stats = out.stats;
    if (out.solution) {
      r.solution.assign(model.variable_count(), 0);
      for (const auto& d : *out.solution) r.solution[d.variable] = d.value;
    }
    return r;
  });
}

std::string root_relaxed_dot(ProblemKind problem, std::string_view text, std::optional<std::size_t> width) {
  return with_problem(problem, text, [&](const auto& model, const auto& relaxation) {
    using M = std::decay_t<decltype(model)>;
    const auto root = root_subproblem(model);
    const std::size_t w = std::max<std::size_t>(2, width.value_or(std::max<std::size_t>(1, model.variable_count())));
    const auto dd =
        DecisionDiagram<M>::compile(model, relaxation, root, CompileOptions{DiagramKind::kRelaxed, w, kNegInf, false});
    return to_dot(dd, model);
  });
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string problem;
    std::string path;
    if (!(fields >> problem) || problem.front() == '#') continue;
    if (!(fields >> path)) throw ParseError(number, "expected '<problem> <path>'");
    std::string extra;
    if (fields >> extra) throw ParseError(number, "trailing text after path");
    try {
      out.push_back({parse_problem_kind(problem), path});
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, e.what());
    }
  }
  return out;
}

std::vector<NamedConfig> standard_configs() {
  return {{"none", false, false}, {"rub", true, false}, {"locb", false, true}, {"rub+locb", true, true}};
}

std::vector<NamedConfig> parse_configs(std::string_view list) {
  const auto all = standard_configs();
  std::vector<NamedConfig> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t end = std::min(list.find(',', pos), list.size());
    const auto name = list.substr(pos, end - pos);
    auto it = std::find_if(all.begin(), all.end(), [&](const NamedConfig& c) { return c.name == name; });
    if (it == all.end()) throw std::invalid_argument("unknown config '" + std::string(name) + "'");
    out.push_back(*it);
    pos = end + 1;
  }
  return out;
}

std::string csv_row(const std::string& instance, const std::string& config, const RunReport& r, bool timing) {
  auto opt = [](const std::optional<Value>& v) { return v ? std::to_string(*v) : std::string(); };
  return fmt::format("{},{},{},{},{},{},{:.12g},{},{}", instance, problem_name(r.problem), config,
                     status_name(r.status), opt(r.objective), opt(r.bound), r.gap, r.explored,
                     timing ? fmt::format("{:.3f}", r.seconds) : std::string());
}

std::size_t run_bench(const std::vector<ManifestEntry>& entries, const std::vector<NamedConfig>& configs,
                      const BenchOptions& options, std::ostream& csv, std::ostream& log) {
  namespace fs = std::filesystem;
  csv << kBenchHeader << '\n';
  std::size_t missing = 0;
  for (const auto& entry : entries) {
    fs::path path(entry.path);
    if (path.is_relative() && !options.base_dir.empty()) path = fs::path(options.base_dir) / path;
    std::ifstream in(path);
    if (!in) {
      log << "missing instance: " << entry.path << '\n';
      ++missing;
      continue;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    for (const auto& c : configs) {
      SolverConfig config = options.base;
      config.rub = c.rub;
      config.locb = c.locb;
      RunReport report;
      try {
        report = solve_instance(entry.problem, text, config);
      } catch (const std::exception& e) {
        log << "failed instance: " << entry.path << ": " << e.what() << '\n';
        ++missing;
        break;
      }
      csv << csv_row(entry.path, c.name, report, options.timing) << '\n';
      csv.flush();
    }
  }
  return missing;
}

}  // namespace ddbb
