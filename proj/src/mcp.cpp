#include "ddbb/problems/mcp.hpp"

#include <algorithm>
#include <cstdlib>

namespace ddbb::mcp {

namespace {
Value pos(Value v) { return std::max<Value>(0, v); }
Value neg(Value v) { return std::min<Value>(0, v); }
}  // namespace

Model::Model(const WeightedGraph& graph) : n_(graph.n), w_(graph.n * graph.n, 0) {
  for (const auto& e : graph.edges) {
    w_[e.u * n_ + e.v] += e.weight;
    w_[e.v * n_ + e.u] += e.weight;
  }
  pre_.positive_tail.assign(n_ + 1, 0);
  for (std::size_t k = n_; k-- > 0;) {
    Value row = 0;
    for (std::size_t j = k + 1; j < n_; ++j) row += pos(weight(k, j));
    pre_.positive_tail[k] = pre_.positive_tail[k + 1] + row;
  }
  pre_.negative_head.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < n_; ++k) {
    Value col = 0;
    for (std::size_t i = 0; i < k; ++i) col += neg(weight(i, k));
    pre_.negative_head[k + 1] = pre_.negative_head[k] + col;
  }
  pre_.root_value = pre_.negative_head[n_];
}

std::optional<State> Model::transition(const State& s, Decision d) const {
  if (d.value != kS && d.value != kT) return std::nullopt;
  const std::size_t k = d.variable;
  State next = s;
  next.benefits[k] = 0;
  for (std::size_t l = k + 1; l < n_; ++l)
    next.benefits[l] += d.value == kS ? weight(k, l) : -weight(k, l);
  return next;
}

// Vertex k collects its own pending benefit for the chosen side. For each
// undecided l, the edge (k, l) pushes l towards one side; whatever part of
// that push cancels l's current lean is gained whichever side l ends up on.
Value Model::transition_cost(const State& s, Decision d) const {
  const std::size_t k = d.variable;
  const Value sk = s.benefits[k];
  Value cost = d.value == kS ? pos(-sk) : pos(sk);
  for (std::size_t l = k + 1; l < n_; ++l) {
    const Value sl = s.benefits[l];
    const Value wkl = weight(k, l);
    const bool opposed = d.value == kS ? sl * wkl <= 0 : sl * wkl >= 0;
    if (opposed) cost += std::min(std::llabs(sl), std::llabs(wkl));
  }
  return cost;
}

Value Model::fast_bound(const State& s, std::size_t layer, Value value_top) const {
  Value bound = value_top;
  for (std::size_t i = layer; i < n_; ++i) bound += std::llabs(s.benefits[i]);
  return bound + pre_.positive_tail[layer] + pre_.negative_head[layer] - pre_.root_value;
}

}  // namespace ddbb::mcp
