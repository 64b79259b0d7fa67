#pragma once

// Weighted MAX-2SAT. Variable k is assigned false (0) or true (1). State
// entry l is the net benefit of setting the undecided variable l to true
// coming from clauses whose other literal is already falsified, net of the
// part that is collected whatever l becomes.
//
// Tautologies (x or not x) are satisfied by every assignment and are counted
// once in the initial value.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddbb/instances.hpp"
#include "ddbb/model.hpp"
#include "ddbb/problems/benefit_state.hpp"

namespace ddbb::max2sat {

using State = BenefitState;

inline constexpr int kFalse = 0;
inline constexpr int kTrue = 1;

struct Precomp {
  Value root_value = 0;              // total tautology weight
  std::vector<Value> tautology_head;  // [k] = tautology weight over variables < k
  std::vector<Value> best_tail;       // [k] = pairwise and unit maxima over variables >= k
};

class Model {
 public:
  using State = max2sat::State;

  explicit Model(const Wcnf& formula);

  std::size_t variable_count() const { return n_; }
  State initial_state() const { return State{std::vector<Value>(n_, 0)}; }
  Value initial_value() const { return pre_.root_value; }

  std::vector<int> domain(const State&, std::size_t) const { return {kFalse, kTrue}; }
  std::vector<int> full_domain(std::size_t) const { return {kFalse, kTrue}; }
  std::optional<State> transition(const State& s, Decision d) const;
  Value transition_cost(const State& s, Decision d) const;
  Value fast_bound(const State& s, std::size_t layer, Value value_top) const;

  std::string describe(const State& s) const { return describe_benefits(s); }

  // Weight of the clause (lit_i or lit_j), lit polarity 1 = positive.
  Value pair_weight(std::size_t i, std::size_t j, int pol_i, int pol_j) const {
    return pairs_[((i * n_ + j) * 2 + static_cast<std::size_t>(pol_i)) * 2 + static_cast<std::size_t>(pol_j)];
  }
  Value unit_weight(std::size_t i, int pol) const { return units_[i * 2 + static_cast<std::size_t>(pol)]; }
  Value tautology_weight(std::size_t i) const { return tautologies_[i]; }
  const Precomp& precomp() const { return pre_; }

 private:
  Value& pair_ref(std::size_t i, std::size_t j, int pol_i, int pol_j) {
    return pairs_[((i * n_ + j) * 2 + static_cast<std::size_t>(pol_i)) * 2 + static_cast<std::size_t>(pol_j)];
  }

  std::size_t n_;
  std::vector<Value> pairs_;  // both orientations stored
  std::vector<Value> units_;
  std::vector<Value> tautologies_;
  Precomp pre_;
};

// Same componentwise merge and compensating arc relaxation as MCP.
class Relaxation {
 public:
  State merge(std::span<const State* const> states, std::size_t layer) const {
    return merge_benefits(states, layer);
  }
  Value relax_arc(Value weight, const State&, const State& original, const State& merged, std::size_t layer) const {
    return relax_benefit_arc(weight, original, merged, layer);
  }
};

}  // namespace ddbb::max2sat
