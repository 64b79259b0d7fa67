#pragma once

// Dynamic-programming model contracts shared by every problem plugin.
//
// The engine always maximizes. A model describes a labeled transition system
// over layers 0..n: an initial state and value, a transition function that
// may reach the infeasible state (represented by std::nullopt and never
// recovered from), and a transition cost. The objective of a complete
// assignment x is initial_value + sum of transition_cost along the replayed
// path. Minimization problems negate their costs and bounds.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ddbb {

using Value = std::int64_t;

// Sentinels leave head-room so that sentinel + finite arc weight never wraps.
inline constexpr Value kNegInf = std::numeric_limits<Value>::min() / 4;
inline constexpr Value kPosInf = std::numeric_limits<Value>::max() / 4;

inline bool is_finite(Value v) { return v > kNegInf && v < kPosInf; }

struct Decision {
  std::size_t variable = 0;
  int value = 0;

  friend bool operator==(const Decision&, const Decision&) = default;
};

// One decision per variable, ordered by variable index.
using Assignment = std::vector<Decision>;

template <class M>
concept DpModel = requires(const M& m, const typename M::State& s, Decision d, std::size_t layer, Value v) {
  typename M::State;
  requires std::copy_constructible<typename M::State>;
  requires std::equality_comparable<typename M::State>;
  { std::hash<typename M::State>{}(s) } -> std::convertible_to<std::size_t>;
  { m.variable_count() } -> std::convertible_to<std::size_t>;
  { m.initial_state() } -> std::convertible_to<typename M::State>;
  { m.initial_value() } -> std::convertible_to<Value>;
  // Values worth trying for variable `layer` from state s. Values that are
  // cheap to rule out may be omitted here instead of failing in transition.
  { m.domain(s, layer) } -> std::convertible_to<std::vector<int>>;
  // State-independent domain, used only by exhaustive enumeration.
  { m.full_domain(layer) } -> std::convertible_to<std::vector<int>>;
  { m.transition(s, d) } -> std::convertible_to<std::optional<typename M::State>>;
  { m.transition_cost(s, d) } -> std::convertible_to<Value>;
  // Admissible bound on the total objective of any feasible completion of a
  // path reaching s (at `layer`) with prefix value v. kNegInf means "no
  // feasible completion".
  { m.fast_bound(s, layer, v) } -> std::convertible_to<Value>;
};

// Merge operator and arc relaxation. merge() receives states of one layer and
// returns a state over-approximating all of them; relax_arc() returns the new
// weight of an arc (source -> original) redirected to the merged state.
template <class R, class M>
concept DpRelaxation = DpModel<M> &&
    requires(const R& r, std::span<const typename M::State* const> selection, const typename M::State& s,
             Value w, std::size_t layer) {
      { r.merge(selection, layer) } -> std::convertible_to<typename M::State>;
      { r.relax_arc(w, s, s, s, layer) } -> std::convertible_to<Value>;
    };

template <class M>
concept DescribableModel = DpModel<M> && requires(const M& m, const typename M::State& s) {
  { m.describe(s) } -> std::convertible_to<std::string>;
};

// Replays x from the initial state. std::nullopt when a transition is infeasible.
template <DpModel M>
std::optional<Value> evaluate_assignment(const M& model, const Assignment& x) {
  const std::size_t n = model.variable_count();
  if (x.size() != n) throw std::invalid_argument("assignment must hold one decision per variable");
  typename M::State state = model.initial_state();
  Value total = model.initial_value();
  for (std::size_t i = 0; i < n; ++i) {
    const Decision& d = x[i];
    if (d.variable != i) throw std::invalid_argument("assignment decisions must be ordered by variable");
    auto next = model.transition(state, d);
    if (!next) return std::nullopt;
    total += model.transition_cost(state, d);
    state = std::move(*next);
  }
  return total;
}

inline constexpr double kBruteForceLimit = 1e7;

namespace detail {

template <DpModel M>
void enumerate(const M& model, const typename M::State& state, std::size_t layer, Value value, Assignment& prefix,
               std::optional<std::pair<Value, Assignment>>& best) {
  if (layer == model.variable_count()) {
    if (!best || value > best->first) best.emplace(value, prefix);
    return;
  }
  for (int v : model.full_domain(layer)) {
    const Decision d{layer, v};
    auto next = model.transition(state, d);
    if (!next) continue;
    prefix.push_back(d);
    enumerate(model, *next, layer + 1, value + model.transition_cost(state, d), prefix, best);
    prefix.pop_back();
  }
}

}  // namespace detail

// Exhaustive optimum over the Cartesian product of full_domain(0..n-1).
// Infeasible prefixes are cut as soon as they reach the infeasible state,
// which does not change the maximum. std::nullopt when nothing is feasible.
template <DpModel M>
std::optional<std::pair<Value, Assignment>> brute_force_optimum(const M& model) {
  double product = 1.0;
  for (std::size_t i = 0; i < model.variable_count(); ++i) {
    product *= static_cast<double>(model.full_domain(i).size());
    if (product > kBruteForceLimit) throw std::length_error("domain too large for exhaustive enumeration");
  }
  std::optional<std::pair<Value, Assignment>> best;
  Assignment prefix;
  detail::enumerate(model, model.initial_state(), 0, model.initial_value(), prefix, best);
  return best;
}

}  // namespace ddbb
