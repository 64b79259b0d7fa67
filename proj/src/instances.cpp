#include "ddbb/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace ddbb {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Non-empty lines, skipping those whose first token starts with a comment marker.
std::vector<Line> content_lines(std::string_view text, std::string_view comment_markers) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    auto tokens = split(text.substr(pos, end - pos));
    if (!tokens.empty() && comment_markers.find(tokens.front().front()) == std::string_view::npos)
      out.push_back({number, std::move(tokens)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

template <class T>
T parse_int(std::string_view token, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  return value;
}

// Integers, or decimals rounded to the nearest integer (some TSPTW suites
// store distances with two decimals).
Value parse_time(std::string_view token, std::size_t line) {
  Value v{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec == std::errc{} && ptr == token.data() + token.size()) return v;
  try {
    std::size_t used = 0;
    const double d = std::stod(std::string(token), &used);
    if (used != token.size() || !std::isfinite(d)) throw std::invalid_argument("trailing");
    return static_cast<Value>(std::llround(d));
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + std::string(token) + "'");
  }
}

}  // namespace

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "misp") return ProblemKind::kMisp;
  if (name == "mcp") return ProblemKind::kMcp;
  if (name == "max2sat") return ProblemKind::kMax2Sat;
  if (name == "tsptw") return ProblemKind::kTsptw;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::string_view problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMisp:
      return "misp";
    case ProblemKind::kMcp:
      return "mcp";
    case ProblemKind::kMax2Sat:
      return "max2sat";
    case ProblemKind::kTsptw:
      return "tsptw";
  }
  return "?";
}

WeightedGraph parse_graph(std::string_view text) {
  WeightedGraph g;
  bool header = false;
  std::size_t declared_edges = 0;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t last_line = 0;
  for (const auto& [number, tok] : content_lines(text, "c")) {
    last_line = number;
    if (tok[0] == "p") {
      if (header) throw ParseError(number, "duplicate header");
      if (tok.size() != 4 || tok[1] != "edge") throw ParseError(number, "malformed header, expected 'p edge n m'");
      g.n = parse_int<std::size_t>(tok[2], number);
      declared_edges = parse_int<std::size_t>(tok[3], number);
      g.vertex_weights.assign(g.n, 1);
      header = true;
      continue;
    }
    if (!header) throw ParseError(number, "missing 'p edge n m' header");
    auto vertex = [&](std::string_view t) {
      const auto v = parse_int<std::size_t>(t, number);
      if (v == 0 || v > g.n) throw ParseError(number, "vertex out of range");
      return v - 1;
    };
    if (tok[0] == "n") {
      if (tok.size() != 3) throw ParseError(number, "malformed vertex weight line, expected 'n i w'");
      g.vertex_weights[vertex(tok[1])] = parse_int<Value>(tok[2], number);
      g.explicit_vertex_weights = true;
    } else if (tok[0] == "e") {
      if (tok.size() != 3 && tok.size() != 4) throw ParseError(number, "malformed edge line, expected 'e u v w'");
      auto u = vertex(tok[1]);
      auto v = vertex(tok[2]);
      if (u == v) throw ParseError(number, "self loop");
      if (u > v) std::swap(u, v);
      if (!seen.emplace(u, v).second) throw ParseError(number, "duplicate edge");
      const Value w = tok.size() == 4 ? parse_int<Value>(tok[3], number) : 1;
      g.edges.push_back({u, v, w});
    } else {
      throw ParseError(number, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) throw ParseError(last_line, "missing 'p edge n m' header");
  if (g.edges.size() != declared_edges)
    throw ParseError(last_line, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                    std::to_string(g.edges.size()));
  return g;
}

std::string emit_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out << "p edge " << g.n << ' ' << g.edges.size() << '\n';
  if (g.explicit_vertex_weights)
    for (std::size_t i = 0; i < g.n; ++i) out << "n " << i + 1 << ' ' << g.vertex_weights[i] << '\n';
  for (const auto& e : g.edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.weight << '\n';
  return out.str();
}

Wcnf parse_wcnf(std::string_view text) {
  Wcnf f;
  bool header = false;
  std::size_t declared = 0;
  std::size_t last_line = 0;
  for (const auto& [number, tok] : content_lines(text, "c")) {
    last_line = number;
    if (tok[0] == "p") {
      if (header) throw ParseError(number, "duplicate header");
      if (tok.size() < 4 || tok[1] != "wcnf") throw ParseError(number, "malformed header, expected 'p wcnf n m'");
      f.variables = parse_int<std::size_t>(tok[2], number);
      declared = parse_int<std::size_t>(tok[3], number);
      header = true;
      continue;
    }
    if (!header) throw ParseError(number, "missing 'p wcnf n m' header");
    if (tok.back() != "0") throw ParseError(number, "clause must end with 0");
    const std::size_t literals = tok.size() - 2;
    if (literals == 0) throw ParseError(number, "empty clause");
    if (literals > 2) throw ParseError(number, "clauses longer than 2 literals are not supported");
    Clause c;
    c.weight = parse_int<Value>(tok[0], number);
    auto literal = [&](std::string_view t) {
      const int l = parse_int<int>(t, number);
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) > f.variables) throw ParseError(number, "literal out of range");
      return l;
    };
    c.first = literal(tok[1]);
    c.second = literals == 2 ? literal(tok[2]) : 0;
    f.clauses.push_back(c);
  }
  if (!header) throw ParseError(last_line, "missing 'p wcnf n m' header");
  if (f.clauses.size() != declared)
    throw ParseError(last_line, "header declares " + std::to_string(declared) + " clauses, found " +
                                    std::to_string(f.clauses.size()));
  return f;
}

std::string emit_wcnf(const Wcnf& f) {
  std::ostringstream out;
  out << "p wcnf " << f.variables << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    out << c.weight << ' ' << c.first;
    if (c.second != 0) out << ' ' << c.second;
    out << " 0\n";
  }
  return out.str();
}

TsptwInstance make_tsptw(std::size_t n, std::vector<Value> dist, std::vector<Value> earliest,
                         std::vector<Value> latest) {
  if (dist.size() != n * n || earliest.size() != n || latest.size() != n)
    throw std::invalid_argument("TSPTW dimension mismatch");
  TsptwInstance inst{n, std::move(dist), std::move(earliest), std::move(latest), {}};
  inst.shortest_edge.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    Value best = std::numeric_limits<Value>::max();
    for (std::size_t q = 0; q < n; ++q)
      if (q != p) best = std::min(best, inst.distance(q, p));
    inst.shortest_edge[p] = n > 1 ? best : 0;
  }
  return inst;
}

TsptwInstance parse_tsptw(std::string_view text) {
  const auto lines = content_lines(text, "#");
  if (lines.empty()) throw ParseError(1, "empty TSPTW file");
  const auto& first = lines.front();
  if (first.tokens.size() != 1) throw ParseError(first.number, "first line must hold the number of cities");
  const auto n = parse_int<std::size_t>(first.tokens[0], first.number);
  if (n == 0) throw ParseError(first.number, "at least one city required");
  if (lines.size() != 1 + 2 * n)
    throw ParseError(lines.back().number, "expected " + std::to_string(n) + " distance rows and " +
                                              std::to_string(n) + " window lines");
  std::vector<Value> dist;
  dist.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = lines[1 + i];
    if (row.tokens.size() != n)
      throw ParseError(row.number, "distance row has " + std::to_string(row.tokens.size()) + " entries, expected " +
                                       std::to_string(n));
    for (auto t : row.tokens) {
      const Value d = parse_time(t, row.number);
      if (d < 0) throw ParseError(row.number, "negative distance");
      dist.push_back(d);
    }
  }
  std::vector<Value> earliest(n);
  std::vector<Value> latest(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = lines[1 + n + i];
    if (w.tokens.size() != 2) throw ParseError(w.number, "window line must be 'earliest latest'");
    earliest[i] = parse_time(w.tokens[0], w.number);
    latest[i] = parse_time(w.tokens[1], w.number);
    if (earliest[i] > latest[i]) throw ParseError(w.number, "empty time window");
  }
  return make_tsptw(n, std::move(dist), std::move(earliest), std::move(latest));
}

std::string emit_tsptw(const TsptwInstance& inst) {
  std::ostringstream out;
  out << inst.n << '\n';
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) out << (j ? " " : "") << inst.distance(i, j);
    out << '\n';
  }
  for (std::size_t i = 0; i < inst.n; ++i) out << inst.earliest[i] << ' ' << inst.latest[i] << '\n';
  return out.str();
}

std::uint64_t InstanceRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::vector<std::pair<std::size_t, std::size_t>> erdos_renyi(std::size_t n, double p, InstanceRng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return edges;
}

namespace {

template <std::size_t N>
Value pick(InstanceRng& rng, const Value (&values)[N]) {
  return values[rng.below(N)];
}

std::string generate_tsptw(std::size_t n, double p, InstanceRng& rng) {
  if (n == 0) throw std::invalid_argument("TSPTW needs at least one city");
  std::vector<std::pair<double, double>> xy(n);
  for (auto& [x, y] : xy) {
    x = static_cast<double>(rng.below(101));
    y = static_cast<double>(rng.below(101));
  }
  std::vector<Value> dist(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist[i * n + j] = static_cast<Value>(std::llround(std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second)));

  // Windows are centered on the arrival times of a random tour, which stays
  // feasible.
  std::vector<std::size_t> tour(n - 1);
  std::iota(tour.begin(), tour.end(), std::size_t{1});
  for (std::size_t i = tour.size(); i > 1; --i) std::swap(tour[i - 1], tour[rng.below(i)]);

  const auto spread = static_cast<std::uint64_t>(std::floor(p * 100.0));
  std::vector<Value> earliest(n, 0);
  std::vector<Value> latest(n, 0);
  Value t = 0;
  std::size_t at = 0;
  for (auto c : tour) {
    t += dist[at * n + c];
    earliest[c] = std::max<Value>(0, t - static_cast<Value>(rng.below(spread + 1)));
    latest[c] = t + static_cast<Value>(rng.below(spread + 1));
    at = c;
  }
  t += dist[at * n];
  earliest[0] = 0;
  latest[0] = t + static_cast<Value>(rng.below(spread + 1));
  return emit_tsptw(make_tsptw(n, std::move(dist), std::move(earliest), std::move(latest)));
}

}  // namespace

std::string generate_instance(ProblemKind problem, std::size_t n, double p, std::uint64_t seed) {
  InstanceRng rng(seed);
  static constexpr Value kMispWeights[] = {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5};
  static constexpr Value kMcpWeights[] = {-1, 1};
  static constexpr Value kClauseWeights[] = {1, 2, 3, 5, 6, 7, 8, 9, 10};

  switch (problem) {
    case ProblemKind::kMisp: {
      WeightedGraph g;
      g.n = n;
      g.explicit_vertex_weights = true;
      g.vertex_weights.resize(n);
      for (auto& w : g.vertex_weights) w = pick(rng, kMispWeights);
      for (auto [u, v] : erdos_renyi(n, p, rng)) g.edges.push_back({u, v, 1});
      return emit_graph(g);
    }
    case ProblemKind::kMcp: {
      WeightedGraph g;
      g.n = n;
      g.vertex_weights.assign(n, 1);
      for (auto [u, v] : erdos_renyi(n, p, rng)) g.edges.push_back({u, v, pick(rng, kMcpWeights)});
      return emit_graph(g);
    }
    case ProblemKind::kMax2Sat: {
      if (n % 2 != 0) throw std::invalid_argument("MAX2SAT generation needs an even vertex count (two literals per variable)");
      Wcnf f;
      f.variables = n / 2;
      auto literal = [](std::size_t vertex) {
        const int var = static_cast<int>(vertex / 2) + 1;
        return vertex % 2 == 0 ? var : -var;
      };
      for (auto [u, v] : erdos_renyi(n, p, rng)) f.clauses.push_back({literal(u), literal(v), pick(rng, kClauseWeights)});
      return emit_wcnf(f);
    }
    case ProblemKind::kTsptw:
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("window spread must lie in [0, 1]");
      return generate_tsptw(n, p, rng);
  }
  throw std::invalid_argument("unknown problem");
}

}  // namespace ddbb
