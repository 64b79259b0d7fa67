#pragma once

// Local bounds (LocB) and rough upper bound (RUB) pruning.
//
// compute_local_bounds() annotates every node of the last exact layer of a
// relaxed diagram with the length of the longest root-terminal path through
// it. The backward sweep stops at the last exact layer, which is only valid
// for LEL cutsets: a cutset sitting above inexact nodes (e.g. the first exact
// layer) would need the sweep to run all the way to the root, otherwise nodes
// left unmarked get a -inf bound and are pruned wrongly.

#include <algorithm>
#include <cstddef>
#include <stdexcept>

#include "ddbb/model.hpp"

namespace ddbb {

// True iff a node with this state and prefix value may still improve on the
// incumbent. Infeasible states (fast bound kNegInf) are always rejected.
template <DpModel M>
bool rub_admits(const M& model, const typename M::State& state, std::size_t layer, Value value_top,
                Value incumbent) {
  return model.fast_bound(state, layer, value_top) > incumbent;
}

struct LocalBoundStats {
  std::size_t nodes_visited = 0;
  std::size_t arcs_visited = 0;
};

// DD is a DecisionDiagram compiled as Relaxed (inbound arc lists retained).
template <class DD>
LocalBoundStats compute_local_bounds(DD& dd) {
  if (!dd.keeps_arcs()) throw std::invalid_argument("local bounds need a relaxed diagram with inbound arcs");
  LocalBoundStats stats;
  const std::size_t lel = dd.lel();
  const std::size_t last = dd.last_layer();

  for (std::size_t i = lel; i <= last; ++i) {
    for (auto& node : dd.layer_mut(i)) {
      node.value_bot = kNegInf;
      node.marked = false;
    }
  }
  for (auto& t : dd.layer_mut(last)) {
    t.marked = true;
    t.value_bot = 0;
  }

  for (std::size_t i = last; i > lel; --i) {
    auto parents = dd.layer_mut(i - 1);
    for (const auto& u : dd.layer_mut(i)) {
      ++stats.nodes_visited;
      if (!u.marked) continue;
      for (const auto& arc : u.inbound) {
        ++stats.arcs_visited;
        auto& p = parents[arc.parent];
        p.marked = true;
        p.value_bot = std::max(p.value_bot, u.value_bot + arc.weight);
      }
    }
  }

  for (auto& u : dd.layer_mut(lel)) {
    ++stats.nodes_visited;
    u.local_bound = u.marked ? u.value_top + u.value_bot : kNegInf;
  }
  return stats;
}

}  // namespace ddbb
