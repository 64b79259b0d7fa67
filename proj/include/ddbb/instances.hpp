#pragma once

// Instance formats, parsers, emitters and seeded generators.
//
// Graph (MISP, MCP), DIMACS-like, 1-indexed:
//   c comment
//   p edge <n> <m>
//   n <i> <w>          optional vertex weight (default 1)
//   e <u> <v> [<w>]    edge, weight defaults to 1
//
// Weighted 2-CNF (MAX2SAT):
//   p wcnf <nvars> <nclauses>
//   <w> <lit> [<lit>] 0
//
// TSPTW: first line n, then n rows of n distances, then n lines
// "<earliest> <latest>". Blank lines and lines starting with '#' are skipped.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddbb/model.hpp"

namespace ddbb {

enum class ProblemKind { kMisp, kMcp, kMax2Sat, kTsptw };

ProblemKind parse_problem_kind(std::string_view name);
std::string_view problem_name(ProblemKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  std::size_t u = 0;  // 0-indexed, u < v
  std::size_t v = 0;
  Value weight = 1;
};

struct WeightedGraph {
  std::size_t n = 0;
  std::vector<Value> vertex_weights;  // size n
  bool explicit_vertex_weights = false;
  std::vector<Edge> edges;
};

struct Clause {
  int first = 0;   // DIMACS literal: +v or -v, v 1-indexed
  int second = 0;  // 0 for a unit clause
  Value weight = 1;
};

struct Wcnf {
  std::size_t variables = 0;
  std::vector<Clause> clauses;
};

struct TsptwInstance {
  std::size_t n = 0;
  std::vector<Value> dist;  // row-major n x n
  std::vector<Value> earliest;
  std::vector<Value> latest;
  std::vector<Value> shortest_edge;  // min over q != p of dist(q, p)

  Value distance(std::size_t from, std::size_t to) const { return dist[from * n + to]; }
};

// Builds an instance and precomputes shortest inbound edges.
TsptwInstance make_tsptw(std::size_t n, std::vector<Value> dist, std::vector<Value> earliest,
                         std::vector<Value> latest);

WeightedGraph parse_graph(std::string_view text);
std::string emit_graph(const WeightedGraph& graph);

Wcnf parse_wcnf(std::string_view text);
std::string emit_wcnf(const Wcnf& wcnf);

TsptwInstance parse_tsptw(std::string_view text);
std::string emit_tsptw(const TsptwInstance& instance);

// Portable seeded source: mt19937_64 output mapped without the
// implementation-defined std distributions, so a seed produces the same
// instance with any standard library.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Erdos-Renyi G(n, p) edge list over 0..n-1, lexicographic (i < j).
std::vector<std::pair<std::size_t, std::size_t>> erdos_renyi(std::size_t n, double p, InstanceRng& rng);

// Instance text for the given problem. For MAX2SAT, n counts graph vertices:
// vertex 2i is literal x_{i+1}, vertex 2i+1 is its negation, and every edge
// becomes a clause over its two endpoint literals (n must be even). For TSPTW,
// n counts cities including the depot and p scales the time-window widths.
std::string generate_instance(ProblemKind problem, std::size_t n, double p, std::uint64_t seed);

}  // namespace ddbb
