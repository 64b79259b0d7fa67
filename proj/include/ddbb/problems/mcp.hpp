#pragma once

// Maximum cut. Variable k places vertex k in partition S (0) or T (1).
// State entry l is the marginal benefit of putting the undecided vertex l in
// T given the decisions so far, net of the part already collected as cost.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddbb/instances.hpp"
#include "ddbb/model.hpp"
#include "ddbb/problems/benefit_state.hpp"

namespace ddbb::mcp {

using State = BenefitState;

inline constexpr int kS = 0;
inline constexpr int kT = 1;

// Quantities of the rough upper bound, fixed for the whole run.
struct Precomp {
  Value root_value = 0;             // sum of negative weights
  std::vector<Value> positive_tail;  // [k] = sum over k <= i < j < n of (w_ij)^+
  std::vector<Value> negative_head;  // [k] = sum over 0 <= i < j < k of (w_ij)^-
};

class Model {
 public:
  using State = mcp::State;

  explicit Model(const WeightedGraph& graph);

  std::size_t variable_count() const { return n_; }
  State initial_state() const { return State{std::vector<Value>(n_, 0)}; }
  Value initial_value() const { return pre_.root_value; }

  std::vector<int> domain(const State&, std::size_t) const { return {kS, kT}; }
  std::vector<int> full_domain(std::size_t) const { return {kS, kT}; }
  std::optional<State> transition(const State& s, Decision d) const;
  Value transition_cost(const State& s, Decision d) const;
  // value_top + sum_{i>=k} |s_i| + positive_tail[k] + negative_head[k] - root_value
  Value fast_bound(const State& s, std::size_t layer, Value value_top) const;

  std::string describe(const State& s) const { return describe_benefits(s); }

  Value weight(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  const Precomp& precomp() const { return pre_; }

 private:
  std::size_t n_;
  std::vector<Value> w_;  // symmetric n x n
  Precomp pre_;
};

class Relaxation {
 public:
  State merge(std::span<const State* const> states, std::size_t layer) const {
    return merge_benefits(states, layer);
  }
  Value relax_arc(Value weight, const State&, const State& original, const State& merged, std::size_t layer) const {
    return relax_benefit_arc(weight, original, merged, layer);
  }
};

}  // namespace ddbb::mcp
