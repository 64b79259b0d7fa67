#pragma once

// Travelling salesman with time windows, minimizing the makespan.
//
// Cities are 0..n-1 with 0 the depot. Variables 0..n-2 pick the next city to
// visit and variable n-1 returns to the depot, so a tour has n decisions.
// The salesman may wait for a window to open; arriving after it closes is
// infeasible. Costs and bounds are negated so that the engine maximizes.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddbb/bitset.hpp"
#include "ddbb/instances.hpp"
#include "ddbb/model.hpp"

namespace ddbb::tsptw {

struct State {
  BitSet position;  // a singleton unless merged
  Value earliest = 0;
  Value latest = 0;
  BitSet must_visit;  // unvisited on every path to this state
  BitSet may_visit;   // visited on some paths only

  friend bool operator==(const State&, const State&) = default;
};

struct ModelOptions {
  // Also reject x when max{latest + dist(p, x)} < earliest(x), i.e. when
  // every arrival would have to wait. Off by default: waiting is allowed.
  bool reject_early_arrivals = false;
};

class Model {
 public:
  using State = tsptw::State;
  static constexpr bool kMinimize = true;

  explicit Model(const TsptwInstance& instance, ModelOptions options = {});

  std::size_t variable_count() const { return inst_.n; }
  State initial_state() const;
  Value initial_value() const { return 0; }

  std::vector<int> domain(const State& s, std::size_t layer) const;
  std::vector<int> full_domain(std::size_t layer) const;
  std::optional<State> transition(const State& s, Decision d) const;
  // Negated travel + wait.
  Value transition_cost(const State& s, Decision d) const;
  // Negated rough lower bound on the makespan; kNegInf when the state has
  // no feasible completion.
  Value fast_bound(const State& s, std::size_t layer, Value value_top) const;
  // Rough lower bound on the makespan of any tour through s, or nullopt when
  // the state is detected infeasible.
  std::optional<Value> rough_lower_bound(const State& s, std::size_t layer) const;

  std::string describe(const State& s) const;

  const TsptwInstance& instance() const { return inst_; }

 private:
  Value travel(const State& s, std::size_t to) const;

  TsptwInstance inst_;
  ModelOptions options_;
};

// Union of positions, widest time interval, intersection of must_visit;
// may_visit gets every other city still open on some path. Arcs unchanged.
class Relaxation {
 public:
  State merge(std::span<const State* const> states, std::size_t layer) const;
  Value relax_arc(Value weight, const State&, const State&, const State&, std::size_t) const { return weight; }
};

}  // namespace ddbb::tsptw

template <>
struct std::hash<ddbb::tsptw::State> {
  std::size_t operator()(const ddbb::tsptw::State& s) const noexcept {
    std::size_t h = s.position.hash();
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<ddbb::Value>{}(s.earliest));
    mix(std::hash<ddbb::Value>{}(s.latest));
    mix(s.must_visit.hash());
    mix(s.may_visit.hash());
    return h;
  }
};
