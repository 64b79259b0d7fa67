// Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria. Usage: acceptance [work_dir]

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "checks.hpp"
#include "ddbb/run.hpp"
#include "oracles.hpp"
#include "suites.hpp"
#include "table_model.hpp"

using namespace ddbb;

namespace {

// Pinned tolerances.
constexpr double kGapTolerance = 1e-9;       // CSV gap recomputation
constexpr double kTrendShare = 0.90;         // explored(rub+locb) <= explored(none)
constexpr double kMidSizeTimeout = 60.0;     // seconds per run
constexpr std::size_t kOracleCount = 50;     // MISP, MCP, MAX2SAT
constexpr std::size_t kTsptwOracleCount = 30;
constexpr std::size_t kMidSizeCount = 20;

constexpr ProblemKind kAllProblems[] = {ProblemKind::kMisp, ProblemKind::kMcp, ProblemKind::kMax2Sat,
                                        ProblemKind::kTsptw};

struct Result {
  bool pass = false;
  std::string detail;
};

std::vector<suites::Instance> oracle_instances(ProblemKind kind) {
  return suites::oracle_suite(kind, kind == ProblemKind::kTsptw ? kTsptwOracleCount : kOracleCount);
}

// Brute-force optimum in maximization units, kNegInf when infeasible.
Value oracle_optimum(ProblemKind kind, const std::string& text) {
  switch (kind) {
    case ProblemKind::kMisp:
      return oracle::misp_optimum(parse_graph(text));
    case ProblemKind::kMcp:
      return oracle::mcp_optimum(parse_graph(text));
    case ProblemKind::kMax2Sat:
      return oracle::max2sat_optimum(parse_wcnf(text));
    case ProblemKind::kTsptw: {
      const auto best = oracle::tsptw_optimum(parse_tsptw(text));
      return best ? -*best : kNegInf;
    }
  }
  return kNegInf;
}

// Objective of a solver assignment computed from the instance data alone.
std::optional<Value> direct_objective(ProblemKind kind, const std::string& text, const Assignment& x) {
  const auto values = oracle::values_of(x);
  switch (kind) {
    case ProblemKind::kMisp:
      return oracle::misp_value(parse_graph(text), values);
    case ProblemKind::kMcp:
      return oracle::cut_value(parse_graph(text), values);
    case ProblemKind::kMax2Sat:
      return oracle::satisfied_weight(parse_wcnf(text), values);
    case ProblemKind::kTsptw: {
      if (values.empty() || values.back() != 0) return std::nullopt;
      const auto m = oracle::tour_makespan(parse_tsptw(text), std::vector<int>(values.begin(), values.end() - 1));
      return m ? std::optional<Value>(-*m) : std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<SolverConfig> pruning_configs(std::optional<std::size_t> width) {
  std::vector<SolverConfig> out;
  for (const auto& named : standard_configs()) {
    SolverConfig c;
    c.rub = named.rub;
    c.locb = named.locb;
    c.width = width;
    out.push_back(c);
  }
  return out;
}

// Criteria 1 and 3 share their runs: every relaxed diagram compiled while
// solving is checked against the local-bound laws.
std::pair<Result, Result> oracle_equivalence_and_local_bounds() {
  checks::Tally equivalence;
  checks::Tally laws;
  std::size_t diagrams = 0;
  std::size_t runs = 0;
  for (auto kind : kAllProblems) {
    for (const auto& inst : oracle_instances(kind)) {
      const Value expected = oracle_optimum(kind, inst.text);
      with_problem(kind, inst.text, [&](const auto& model, const auto& relaxation) {
        using M = std::decay_t<decltype(model)>;
        using R = std::decay_t<decltype(relaxation)>;
        oracle::CompletionOracle<M> completions(model);
        for (auto width : {std::optional<std::size_t>{}, std::optional<std::size_t>{2}}) {
          for (const auto& config : pruning_configs(width)) {
            const std::string label = fmt::format("{} width={} rub={} locb={}", inst.name, width.value_or(0),
                                                  config.rub, config.locb);
            typename Solver<M, R>::Observer obs;
            obs.on_relaxed = [&](const DecisionDiagram<M>& dd, Value incumbent) {
              ++diagrams;
              if (config.locb) {
                laws.add(checks::local_bound_laws(dd, incumbent, completions, label));
              } else {
                auto copy = dd;
                compute_local_bounds(copy);
                laws.add(checks::local_bound_laws(copy, incumbent, completions, label));
              }
            };
            const auto out = Solver<M, R>(model, relaxation, config, obs).solve();
            ++runs;
            equivalence.record(out.status == Status::kOptimal && out.incumbent == expected,
                               fmt::format("{}: got {} expected {}", label, out.incumbent, expected));
            if (out.solution) {
              const auto direct = direct_objective(kind, inst.text, *out.solution);
              equivalence.record(direct == out.incumbent, label + ": returned assignment does not replay");
            }
          }
        }
        return 0;
      });
    }
  }
  Result c1{equivalence.ok(), fmt::format("{} solver runs over {} checks", runs, equivalence.checked)};
  if (!equivalence.ok()) c1.detail += fmt::format(", {} failed, first: {}", equivalence.failed, equivalence.first_failure);
  Result c3{laws.ok() && diagrams > 0, fmt::format("{} relaxed diagrams, {} checks", diagrams, laws.checked)};
  if (!laws.ok()) c3.detail += fmt::format(", {} failed, first: {}", laws.failed, laws.first_failure);
  return {c1, c3};
}

Result bound_sandwich() {
  checks::Tally t;
  for (auto kind : kAllProblems) {
    for (const auto& inst : oracle_instances(kind)) {
      const Value opt = oracle_optimum(kind, inst.text);
      with_problem(kind, inst.text, [&](const auto& model, const auto& relaxation) {
        using DD = DecisionDiagram<std::decay_t<decltype(model)>>;
        const auto root = root_subproblem(model);
        for (std::size_t w : {2, 3, 5}) {
          const Value lo = DD::compile(model, root, {DiagramKind::kRestricted, w, kNegInf, false}).best_value();
          const Value hi =
              DD::compile(model, relaxation, root, {DiagramKind::kRelaxed, w, kNegInf, false}).best_value();
          t.record(lo <= opt && opt <= hi,
                   fmt::format("{} width {}: {} <= {} <= {} violated", inst.name, w, lo, opt, hi));
        }
        return 0;
      });
    }
  }
  Result r{t.ok(), fmt::format("{} (instance, width) pairs", t.checked)};
  if (!t.ok()) r.detail += fmt::format(", {} failed, first: {}", t.failed, t.first_failure);
  return r;
}

Result rough_bounds_admissible() {
  checks::Tally t;
  for (auto kind : kAllProblems) {
    for (const auto& inst : oracle_instances(kind)) {
      with_problem(kind, inst.text, [&](const auto& model, const auto&) {
        t.add(checks::rough_bound_admissible(model, inst.name));
        return 0;
      });
    }
  }
  Result r{t.ok(), fmt::format("{} exact-diagram nodes", t.checked)};
  if (!t.ok()) r.detail += fmt::format(", {} failed, first: {}", t.failed, t.first_failure);
  return r;
}

Result relaxed_dominance_example() {
  // Hand-drawn four-variable diagram.
  const auto model = table::four_variable_example();
  const auto root = root_subproblem(model);
  using TableDD = DecisionDiagram<table::Model>;
  const Value exact = TableDD::compile(model, root, {DiagramKind::kExact, 0, kNegInf, false}).best_value();
  const Value relaxed = TableDD::compile(model, table::four_variable_relaxation(), root,
                                         {DiagramKind::kRelaxed, 3, kNegInf, false})
                            .best_value();

  // Seeded four-variable instances of the real problems.
  std::size_t strict = 0;
  std::size_t total = 0;
  bool dominated = true;
  for (auto kind : {ProblemKind::kMisp, ProblemKind::kMcp, ProblemKind::kMax2Sat}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const std::size_t n = kind == ProblemKind::kMax2Sat ? 8 : 4;
      const auto text = generate_instance(kind, n, 0.7, seed);
      with_problem(kind, text, [&](const auto& m, const auto& relaxation) {
        using DD = DecisionDiagram<std::decay_t<decltype(m)>>;
        const auto r = root_subproblem(m);
        const Value e = DD::compile(m, r, {DiagramKind::kExact, 0, kNegInf, false}).best_value();
        const Value x = DD::compile(m, relaxation, r, {DiagramKind::kRelaxed, 3, kNegInf, false}).best_value();
        ++total;
        dominated = dominated && x >= e;
        if (x > e) ++strict;
        return 0;
      });
    }
  }
  return {exact == 25 && relaxed == 26 && dominated && strict > 0,
          fmt::format("crafted: exact {} relaxed {}; seeded: {}/{} strictly dominated, none below", exact, relaxed,
                      strict, total)};
}

std::string mid_size_instance(ProblemKind kind, std::uint64_t seed) {
  switch (kind) {
    case ProblemKind::kMisp:
      return generate_instance(kind, 50, 0.1 + 0.1 * static_cast<double>(seed % 5), seed);
    case ProblemKind::kMcp:
      return generate_instance(kind, 25, 0.3 + 0.15 * static_cast<double>(seed % 5), seed);
    case ProblemKind::kMax2Sat:
      return generate_instance(kind, 50, 0.1 + 0.075 * static_cast<double>(seed % 5), seed);
    case ProblemKind::kTsptw:
      return generate_instance(kind, 12, 0.2 + 0.15 * static_cast<double>(seed % 5), seed);
  }
  return {};
}

Result pruning_trend() {
  std::size_t fewer = 0;
  std::size_t total = 0;
  std::size_t same_objective = 0;
  std::size_t timeouts = 0;
  std::map<ProblemKind, std::pair<std::size_t, std::size_t>> explored;
  std::string first_mismatch;
  for (auto kind : kAllProblems) {
    for (std::uint64_t seed = 0; seed < kMidSizeCount; ++seed) {
      const auto text = mid_size_instance(kind, 500 + seed);
      SolverConfig config;
      config.timeout_seconds = kMidSizeTimeout;
      config.rub = config.locb = false;
      const auto none = solve_instance(kind, text, config);
      config.rub = config.locb = true;
      const auto both = solve_instance(kind, text, config);
      ++total;
      timeouts += (none.status == Status::kTimeout) + (both.status == Status::kTimeout);
      if (both.explored <= none.explored) ++fewer;
      if (none.objective == both.objective && none.status == Status::kOptimal && both.status == Status::kOptimal) {
        ++same_objective;
      } else if (first_mismatch.empty()) {
        first_mismatch = fmt::format(" first mismatch {} seed {}", problem_name(kind), 500 + seed);
      }
      explored[kind].first += none.explored;
      explored[kind].second += both.explored;
    }
  }
  std::string per_problem;
  for (auto kind : kAllProblems)
    per_problem += fmt::format(" {} {}->{}", problem_name(kind), explored[kind].first, explored[kind].second);
  const double share = static_cast<double>(fewer) / static_cast<double>(total);
  return {share >= kTrendShare && same_objective == total,
          fmt::format("explored(rub+locb) <= explored(none) on {}/{} ({:.0f}%), equal objectives {}/{}, {} timeouts;"
                      " total explored none->rub+locb:{}{}",
                      fewer, total, 100 * share, same_objective, total, timeouts, per_problem, first_mismatch)};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> read_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Writes the instances and a manifest listing them; returns the entries.
std::vector<ManifestEntry> write_suite(const std::filesystem::path& dir, const std::vector<suites::Instance>& suite) {
  std::filesystem::create_directories(dir);
  std::vector<ManifestEntry> entries;
  std::ofstream manifest(dir / "manifest.txt");
  for (const auto& inst : suite) {
    const std::string file = inst.name + ".txt";
    std::ofstream(dir / file) << inst.text;
    manifest << problem_name(inst.problem) << ' ' << file << '\n';
    entries.push_back({inst.problem, file});
  }
  return entries;
}

Result end_gap_formula(const std::filesystem::path& work) {
  const bool formula = std::fabs(end_gap(20, 25) - 20.0) <= kGapTolerance && end_gap(42, 42) == 0.0 &&
                       end_gap(0, 0) == 0.0;

  // A bench whose runs time out leave open gaps to recompute.
  std::vector<suites::Instance> suite;
  for (auto kind : kAllProblems)
    for (std::uint64_t seed = 0; seed < 3; ++seed)
      suite.push_back({kind, fmt::format("{}_gap_{}", problem_name(kind), seed), mid_size_instance(kind, 900 + seed)});
  suite.push_back({ProblemKind::kMcp, "mcp_gap_large", generate_instance(ProblemKind::kMcp, 60, 0.5, 1)});
  const auto dir = work / "gap";
  const auto entries = write_suite(dir, suite);
  BenchOptions options;
  options.base.timeout_seconds = 0.05;
  options.base.width = 3;
  options.timing = false;
  options.base_dir = dir.string();
  std::ostringstream csv;
  std::ostringstream log;
  run_bench(entries, standard_configs(), options, csv, log);

  std::size_t rows = 0;
  std::size_t open = 0;
  std::size_t mismatched = 0;
  std::size_t blank = 0;
  for (const auto& line : read_lines(csv.str())) {
    if (line == kBenchHeader) continue;
    const auto f = split_csv(line);
    if (f.size() != 9) {
      ++mismatched;
      continue;
    }
    ++rows;
    if (f[4].empty() || f[5].empty()) {
      ++blank;  // no incumbent yet: gap is reported as 100
      if (std::stod(f[6]) != 100.0) ++mismatched;
      continue;
    }
    const double objective = std::stod(f[4]);
    const double bound = std::stod(f[5]);
    const double expected = end_gap(std::min(objective, bound), std::max(objective, bound));
    if (std::fabs(expected - std::stod(f[6])) > kGapTolerance) ++mismatched;
    if (expected > 0) ++open;
  }
  return {formula && mismatched == 0 && rows == suite.size() * 4 && open > 0,
          fmt::format("end_gap(20,25)={} end_gap(42,42)={} end_gap(0,0)={}; {} CSV rows ({} with open gaps, {} without "
                      "incumbent), {} mismatches",
                      end_gap(20, 25), end_gap(42, 42), end_gap(0, 0), rows, open, blank, mismatched)};
}

std::vector<std::string> objective_column(const std::string& csv) {
  std::vector<std::string> out;
  for (const auto& line : read_lines(csv)) {
    const auto f = split_csv(line);
    out.push_back(f.size() > 4 ? f[0] + "," + f[2] + "," + f[4] : line);
  }
  return out;
}

Result determinism(const std::filesystem::path& work) {
  std::vector<suites::Instance> suite;
  for (auto kind : kAllProblems)
    for (auto& inst : oracle_instances(kind)) suite.push_back(std::move(inst));
  const auto dir = work / "determinism";
  const auto entries = write_suite(dir, suite);
  BenchOptions options;
  options.timing = false;
  options.base_dir = dir.string();

  auto bench = [&](std::size_t workers) {
    options.base.workers = workers;
    std::ostringstream csv;
    std::ostringstream log;
    run_bench(entries, standard_configs(), options, csv, log);
    return csv.str();
  };
  const auto first = bench(1);
  const auto second = bench(1);
  const auto parallel = bench(4);
  std::ofstream(dir / "run1.csv") << first;
  std::ofstream(dir / "run2.csv") << second;
  std::ofstream(dir / "run_4_workers.csv") << parallel;
  const bool identical = first == second;
  const bool same_objectives = objective_column(first) == objective_column(parallel);
  return {identical && same_objectives,
          fmt::format("{} rows; single-thread reruns {}; 4-worker objectives {}", read_lines(first).size() - 1,
                      identical ? "byte-identical" : "DIFFER", same_objectives ? "identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path work =
      argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::temp_directory_path() / "ddbb_acceptance";
  std::filesystem::create_directories(work);

  struct Line {
    int id;
    std::string name;
    Result result;
    double seconds;
  };
  std::vector<Line> lines;
  auto timed = [](auto&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto r = f();
    return std::make_pair(std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };

  const auto [c13, t13] = timed(oracle_equivalence_and_local_bounds);
  lines.push_back({1, "oracle equivalence", c13.first, t13});
  const auto [c2, t2] = timed(bound_sandwich);
  lines.push_back({2, "bound sandwich", c2, t2});
  lines.push_back({3, "local-bound laws", c13.second, 0.0});
  const auto [c4, t4] = timed(rough_bounds_admissible);
  lines.push_back({4, "rough bounds admissible", c4, t4});
  const auto [c5, t5] = timed(relaxed_dominance_example);
  lines.push_back({5, "relaxed bound strictly dominates", c5, t5});
  const auto [c6, t6] = timed(pruning_trend);
  lines.push_back({6, "pruning effectiveness trend", c6, t6});
  const auto [c7, t7] = timed([&] { return end_gap_formula(work); });
  lines.push_back({7, "end-gap formula", c7, t7});
  const auto [c8, t8] = timed([&] { return determinism(work); });
  lines.push_back({8, "determinism", c8, t8});

  int failed = 0;
  for (const auto& l : lines) {
    failed += !l.result.pass;
    std::cout << fmt::format("criterion {} [{}]: {} - {} ({:.1f}s)\n", l.id, l.name, l.result.pass ? "PASS" : "FAIL",
                             l.result.detail, l.seconds);
  }
  std::cout << fmt::format("{}/{} criteria passed\n", lines.size() - static_cast<std::size_t>(failed), lines.size());
  return failed;
}
