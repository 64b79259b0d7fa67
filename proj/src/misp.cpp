#include "ddbb/problems/misp.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddbb::misp {

Model::Model(const WeightedGraph& graph)
    : weights_(graph.vertex_weights), neighbors_(graph.n, BitSet(graph.n)) {
  if (weights_.size() != graph.n) weights_.assign(graph.n, 1);
  for (const auto& e : graph.edges) {
    neighbors_[e.u].set(e.v);
    neighbors_[e.v].set(e.u);
  }
}

std::vector<int> Model::domain(const State& s, std::size_t layer) const {
  if (s.test(layer)) return {0, 1};
  return {0};
}

std::optional<State> Model::transition(const State& s, Decision d) const {
  const std::size_t k = d.variable;
  if (d.value == 1 && !s.test(k)) return std::nullopt;
  if (d.value != 0 && d.value != 1) return std::nullopt;
  State next = s;
  next.reset(k);
  if (d.value == 1) next.subtract(neighbors_[k]);
  return next;
}

Value Model::transition_cost(const State&, Decision d) const { return d.value == 1 ? weights_[d.variable] : 0; }

Value Model::fast_bound(const State& s, std::size_t, Value value_top) const {
  Value bound = value_top;
  s.for_each([&](std::size_t i) { bound += std::max<Value>(0, weights_[i]); });
  return bound;
}

std::string Model::describe(const State& s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

State Relaxation::merge(std::span<const State* const> states, std::size_t) const {
  if (states.empty()) throw std::invalid_argument("cannot merge an empty selection");
  State out = *states.front();
  for (const auto* s : states.subspan(1)) out |= *s;
  return out;
}

}  // namespace ddbb::misp
