#pragma once

// Weighted maximum independent set. Variable k decides whether vertex k
// joins the set; the state is the set of vertices that may still join.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddbb/bitset.hpp"
#include "ddbb/instances.hpp"
#include "ddbb/model.hpp"

namespace ddbb::misp {

using State = BitSet;

class Model {
 public:
  using State = misp::State;

  explicit Model(const WeightedGraph& graph);

  std::size_t variable_count() const { return weights_.size(); }
  State initial_state() const { return BitSet(weights_.size(), true); }
  Value initial_value() const { return 0; }

  std::vector<int> domain(const State& s, std::size_t layer) const;
  std::vector<int> full_domain(std::size_t) const { return {0, 1}; }
  std::optional<State> transition(const State& s, Decision d) const;
  Value transition_cost(const State& s, Decision d) const;
  // value_top + sum of positive weights of the remaining candidates.
  Value fast_bound(const State& s, std::size_t layer, Value value_top) const;

  std::string describe(const State& s) const;

  Value weight(std::size_t v) const { return weights_[v]; }
  const BitSet& neighbors(std::size_t v) const { return neighbors_[v]; }

 private:
  std::vector<Value> weights_;
  std::vector<BitSet> neighbors_;
};

// Union of candidate sets; arc weights are left untouched.
class Relaxation {
 public:
  State merge(std::span<const State* const> states, std::size_t layer) const;
  Value relax_arc(Value weight, const State&, const State&, const State&, std::size_t) const { return weight; }
};

}  // namespace ddbb::misp
