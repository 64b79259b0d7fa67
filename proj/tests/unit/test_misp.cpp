#include <doctest.h>

#include "checks.hpp"
#include "ddbb/problems/misp.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace ddbb;

namespace {

WeightedGraph graph(std::size_t n, std::vector<Value> weights, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  WeightedGraph g;
  g.n = n;
  g.vertex_weights = std::move(weights);
  g.explicit_vertex_weights = true;
  for (auto [u, v] : edges) g.edges.push_back({u, v, 1});
  return g;
}

Assignment assign(std::vector<int> values) {
  Assignment x;
  for (std::size_t i = 0; i < values.size(); ++i) x.push_back({i, values[i]});
  return x;
}

BitSet bits(std::size_t n, std::vector<std::size_t> members) {
  BitSet b(n);
  for (auto m : members) b.set(m);
  return b;
}

}  // namespace

TEST_CASE("misp objective on small graphs") {
  CHECK(evaluate_assignment(misp::Model(graph(2, {4, 7}, {})), assign({1, 1})) == 11);
  CHECK_FALSE(evaluate_assignment(misp::Model(graph(2, {1, 1}, {{0, 1}})), assign({1, 1})));
  const auto triangle = misp::Model(graph(3, {1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}}));
  const auto best = brute_force_optimum(triangle);
  REQUIRE(best);
  CHECK(best->first == 1);
}

TEST_CASE("misp transitions remove the vertex and its neighbours") {
  const misp::Model triangle(graph(3, {1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(triangle.transition(triangle.initial_state(), {0, 1})->none());
  const misp::Model edgeless(graph(3, {1, 1, 1}, {}));
  CHECK(*edgeless.transition(edgeless.initial_state(), {0, 1}) == bits(3, {1, 2}));
  const misp::Model path(graph(3, {1, 1, 1}, {{0, 1}, {1, 2}}));
  CHECK(*path.transition(path.initial_state(), {0, 1}) == bits(3, {2}));
  CHECK_FALSE(path.transition(bits(3, {2}), {1, 1}));
  CHECK(path.domain(bits(3, {2}), 1) == std::vector<int>{0});
}

TEST_CASE("misp costs") {
  const misp::Model m(graph(3, {4, 7, -3}, {}));
  const auto s = m.initial_state();
  CHECK(m.transition_cost(s, {0, 1}) == 4);
  CHECK(m.transition_cost(s, {0, 0}) == 0);
  CHECK(m.transition_cost(s, {2, 1}) == -3);
}

TEST_CASE("misp merge is the union") {
  misp::Relaxation r;
  const BitSet a = bits(3, {0, 2});
  const BitSet b = bits(3, {1, 2});
  const BitSet* both[] = {&a, &b};
  CHECK(r.merge(both, 0) == bits(3, {0, 1, 2}));
  const BitSet* one[] = {&a};
  CHECK(r.merge(one, 0) == a);
  const BitSet empty(3);
  const BitSet* empties[] = {&empty, &empty};
  CHECK(r.merge(empties, 0).none());
  CHECK(r.relax_arc(5, a, b, a, 1) == 5);
}

TEST_CASE("misp rough bound") {
  const misp::Model m(graph(3, {0, 4, -3}, {}));
  CHECK(m.fast_bound(bits(3, {1, 2}), 1, 10) == 14);
  CHECK(m.fast_bound(BitSet(3), 3, 9) == 9);
}

TEST_CASE("misp model agrees with the independent-set oracle") {
  for (const auto& inst : suites::oracle_suite(ProblemKind::kMisp, 15)) {
    const auto g = parse_graph(inst.text);
    const misp::Model model(g);
    if (g.n <= 10) {
      oracle::for_each_binary(g.n, [&](const std::vector<int>& x) {
        CHECK(evaluate_assignment(model, assign(x)) == oracle::misp_value(g, x));
      });
    }
    const auto best = brute_force_optimum(model);
    REQUIRE(best);
    CHECK(best->first == oracle::misp_optimum(g));
    const auto t = checks::rough_bound_admissible(model, inst.name);
    CHECK_MESSAGE(t.ok(), t.first_failure);
  }
}
