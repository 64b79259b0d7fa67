#pragma once

// Layered decision diagrams compiled top-down from a DP model.
//
// A diagram is rooted at a subproblem (a state reached by a fixed prefix of
// decisions) and holds one layer per remaining variable plus the terminal
// layer. Layers are addressed by absolute variable index, so the root layer
// of a subproblem at depth d is layer d and the terminal layer is layer n.
//
// Exact diagrams are never width-bounded. Restricted diagrams delete the
// nodes with the shortest longest path from the root (minLP). Relaxed
// diagrams merge those nodes into a single node with the relaxation's merge
// operator and relax the redirected arcs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ddbb/model.hpp"
#include "ddbb/pruning.hpp"

namespace ddbb {

enum class DiagramKind { kExact, kRestricted, kRelaxed };

struct Arc {
  std::uint32_t parent = 0;  // index into the previous layer
  Decision decision;
  Value weight = 0;
};

template <class State>
struct Node {
  State state;
  Value value_top = kNegInf;  // longest root-to-node path
  std::optional<Arc> best_arc;
  bool exact = true;
  // Filled by compute_local_bounds().
  Value value_bot = kNegInf;
  bool marked = false;
  Value local_bound = kPosInf;
  // Only populated for relaxed diagrams.
  std::vector<Arc> inbound;
};

// An open node of the branch-and-bound: an exact state, the best known
// prefix reaching it and an upper bound on anything attainable through it.
template <class State>
struct SubProblem {
  State state;
  Value value_top = 0;
  std::vector<Decision> path;
  Value ub = kPosInf;

  std::size_t depth() const { return path.size(); }
};

template <DpModel M>
SubProblem<typename M::State> root_subproblem(const M& model) {
  return {model.initial_state(), model.initial_value(), {}, kPosInf};
}

struct CompileOptions {
  DiagramKind kind = DiagramKind::kExact;
  std::size_t width = 0;  // maximum layer width; ignored for exact diagrams
  Value incumbent = kNegInf;
  bool rub = false;
};

// Node indices of a layer ordered from most to least promising:
// value_top descending, then insertion order.
template <class State>
std::vector<std::size_t> minlp_order(std::span<const Node<State>> layer) {
  std::vector<std::size_t> order(layer.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return layer[a].value_top > layer[b].value_top; });
  return order;
}

// Keeps the `width` best nodes (minLP), preserving their relative order.
// Returns true when nodes were deleted.
template <class State>
bool restrict_layer(std::vector<Node<State>>& layer, std::size_t width) {
  if (width == 0) throw std::invalid_argument("width must be at least 1");
  if (layer.size() <= width) return false;
  auto order = minlp_order<State>(layer);
  order.resize(width);
  std::sort(order.begin(), order.end());
  std::vector<Node<State>> kept;
  kept.reserve(width);
  for (auto idx : order) kept.push_back(std::move(layer[idx]));
  layer = std::move(kept);
  return true;
}

// Keeps the width-1 best nodes and merges all others into one node. Inbound
// arcs of merged nodes are relaxed and redirected. When the merged state
// equals the state of a kept node, the arcs are folded into that node, which
// becomes inexact. Returns true when a merge happened.
template <DpModel M, DpRelaxation<M> R>
bool relax_layer(std::vector<Node<typename M::State>>& layer, std::span<const Node<typename M::State>> parents,
                 std::size_t width, const R& relaxation, std::size_t layer_index) {
  using State = typename M::State;
  if (width < 2) throw std::invalid_argument("relaxed width must be at least 2");
  if (layer.size() <= width) return false;

  const auto order = minlp_order<State>(layer);
  std::vector<std::size_t> keep(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(width - 1));
  std::vector<std::size_t> selected(order.begin() + static_cast<std::ptrdiff_t>(width - 1), order.end());
  std::sort(keep.begin(), keep.end());

  std::vector<const State*> selection;
  selection.reserve(selected.size());
  for (auto idx : selected) selection.push_back(&layer[idx].state);
  State merged = relaxation.merge(std::span<const State* const>(selection), layer_index);

  std::vector<Node<State>> out;
  out.reserve(width);
  for (auto idx : keep) out.push_back(std::move(layer[idx]));

  auto target = static_cast<std::size_t>(
      std::find_if(out.begin(), out.end(), [&](const Node<State>& n) { return n.state == merged; }) - out.begin());
  if (target == out.size()) {
    Node<State> m;
    m.state = merged;
    out.push_back(std::move(m));
  }
  Node<State>& into = out[target];
  into.exact = false;
  for (auto idx : selected) {
    const Node<State>& u = layer[idx];
    for (const Arc& arc : u.inbound) {
      const auto& parent = parents[arc.parent];
      const Value w = relaxation.relax_arc(arc.weight, parent.state, u.state, merged, layer_index);
      const Arc relaxed{arc.parent, arc.decision, w};
      into.inbound.push_back(relaxed);
      const Value candidate = parent.value_top + w;
      if (candidate > into.value_top) {
        into.value_top = candidate;
        into.best_arc = relaxed;
      }
    }
  }
  layer = std::move(out);
  return true;
}

// Placeholder relaxation for diagrams that never merge.
template <DpModel M>
struct NoRelaxation {
  typename M::State merge(std::span<const typename M::State* const>, std::size_t) const {
    throw std::logic_error("merge requested without a relaxation");
  }
  Value relax_arc(Value w, const typename M::State&, const typename M::State&, const typename M::State&,
                  std::size_t) const {
    return w;
  }
};

template <DpModel M>
class DecisionDiagram {
 public:
  using State = typename M::State;
  using NodeType = Node<State>;

  // Exact or restricted compilation.
  static DecisionDiagram compile(const M& model, const SubProblem<State>& sub, const CompileOptions& options) {
    if (options.kind == DiagramKind::kRelaxed) throw std::invalid_argument("relaxed compilation needs a relaxation");
    return compile(model, NoRelaxation<M>{}, sub, options);
  }

  template <DpRelaxation<M> R>
  static DecisionDiagram compile(const M& model, const R& relaxation, const SubProblem<State>& sub,
                                 const CompileOptions& options) {
    if (options.kind != DiagramKind::kExact && options.width == 0)
      throw std::invalid_argument("width must be at least 1");
    if (options.kind == DiagramKind::kRelaxed && options.width < 2)
      throw std::invalid_argument("relaxed width must be at least 2");

    DecisionDiagram dd;
    dd.kind_ = options.kind;
    dd.root_depth_ = sub.depth();
    dd.last_layer_ = model.variable_count();
    if (dd.root_depth_ > dd.last_layer_) throw std::invalid_argument("subproblem deeper than the model");

    NodeType root;
    root.state = sub.state;
    root.value_top = sub.value_top;
    dd.layers_.push_back({std::move(root)});
    dd.nodes_created_ = 1;

    const bool keep_arcs = dd.keeps_arcs();
    for (std::size_t depth = dd.root_depth_; depth < dd.last_layer_; ++depth) {
      const auto& current = dd.layers_.back();
      std::vector<NodeType> next;
      std::unordered_map<State, std::uint32_t> index;
      for (std::uint32_t i = 0; i < current.size(); ++i) {
        const NodeType& node = current[i];
        for (int value : model.domain(node.state, depth)) {
          const Decision d{depth, value};
          auto child = model.transition(node.state, d);
          if (!child) continue;
          const Value w = model.transition_cost(node.state, d);
          const Value candidate = node.value_top + w;
          if (options.rub && !rub_admits(model, *child, depth + 1, candidate, options.incumbent)) {
            ++dd.rub_pruned_;
            continue;
          }
          const Arc arc{i, d, w};
          auto [it, inserted] = index.try_emplace(*child, static_cast<std::uint32_t>(next.size()));
          if (inserted) {
            NodeType fresh;
            fresh.state = std::move(*child);
            fresh.value_top = candidate;
            fresh.best_arc = arc;
            fresh.exact = node.exact;
            if (keep_arcs) fresh.inbound.push_back(arc);
            next.push_back(std::move(fresh));
            ++dd.nodes_created_;
          } else {
            NodeType& target = next[it->second];
            target.exact = target.exact && node.exact;
            if (keep_arcs) target.inbound.push_back(arc);
            if (candidate > target.value_top) {
              target.value_top = candidate;
              target.best_arc = arc;
            }
          }
        }
      }
      dd.layers_.push_back(std::move(next));

      auto& fresh_layer = dd.layers_.back();
      if (options.kind == DiagramKind::kRestricted) {
        if (restrict_layer(fresh_layer, options.width)) dd.exact_ = false;
      } else if (options.kind == DiagramKind::kRelaxed) {
        // The layer right below the root is never merged: the last exact
        // layer must lie strictly below the root or branching stalls.
        const bool first_layer = dd.layers_.size() == 2;
        if (!first_layer) {
          const auto& parents = dd.layers_[dd.layers_.size() - 2];
          if (relax_layer<M>(fresh_layer, std::span<const NodeType>(parents), options.width, relaxation, depth + 1)) {
            dd.exact_ = false;
            ++dd.nodes_created_;
          }
        }
      }
    }

    dd.finish();
    return dd;
  }

  DiagramKind kind() const { return kind_; }
  // True when no node was deleted or merged.
  bool is_exact() const { return exact_; }
  bool keeps_arcs() const { return kind_ == DiagramKind::kRelaxed; }
  std::size_t root_depth() const { return root_depth_; }
  std::size_t last_layer() const { return last_layer_; }
  // Deepest layer whose nodes are all exact (absolute index).
  std::size_t lel() const { return lel_; }
  std::size_t nodes_created() const { return nodes_created_; }
  std::size_t rub_pruned() const { return rub_pruned_; }

  std::span<const NodeType> layer(std::size_t absolute) const { return layers_.at(absolute - root_depth_); }
  std::span<NodeType> layer_mut(std::size_t absolute) { return layers_.at(absolute - root_depth_); }

  std::size_t node_count() const {
    std::size_t c = 0;
    for (const auto& l : layers_) c += l.size();
    return c;
  }

  std::optional<std::size_t> best_terminal() const { return best_terminal_; }

  // Value of the longest root-terminal path; kNegInf when none exists.
  Value best_value() const {
    return best_terminal_ ? layers_.back()[*best_terminal_].value_top : kNegInf;
  }

  // Decisions from the diagram root down to the given node, following the
  // best inbound arcs.
  std::vector<Decision> path_to(std::size_t absolute_layer, std::size_t index) const {
    std::vector<Decision> path;
    std::size_t rel = absolute_layer - root_depth_;
    std::size_t at = index;
    while (rel > 0) {
      const auto& arc = layers_[rel][at].best_arc;
      if (!arc) throw std::logic_error("node without inbound arc below the root");
      path.push_back(arc->decision);
      at = arc->parent;
      --rel;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  void finish() {
    const std::size_t count = layers_.size();
    lel_ = last_layer_;
    for (std::size_t rel = 0; rel < count; ++rel) {
      const bool all_exact =
          std::all_of(layers_[rel].begin(), layers_[rel].end(), [](const NodeType& n) { return n.exact; });
      if (!all_exact) {
        lel_ = root_depth_ + rel - 1;
        break;
      }
    }
    const auto& terminal = layers_.back();
    best_terminal_.reset();
    for (std::size_t i = 0; i < terminal.size(); ++i) {
      if (!best_terminal_ || terminal[i].value_top > terminal[*best_terminal_].value_top) best_terminal_ = i;
    }
  }

  DiagramKind kind_ = DiagramKind::kExact;
  bool exact_ = true;
  std::size_t root_depth_ = 0;
  std::size_t last_layer_ = 0;
  std::size_t lel_ = 0;
  std::size_t nodes_created_ = 0;
  std::size_t rub_pruned_ = 0;
  std::optional<std::size_t> best_terminal_;
  std::vector<std::vector<NodeType>> layers_;
};

struct Solution {
  Value value = kNegInf;
  std::vector<Decision> decisions;  // from the diagram root
};

template <DpModel M>
std::optional<Solution> best_solution(const DecisionDiagram<M>& dd) {
  const auto t = dd.best_terminal();
  if (!t) return std::nullopt;
  return Solution{dd.best_value(), dd.path_to(dd.last_layer(), *t)};
}

// One subproblem per node of the last exact layer. The upper bound is the
// node's local bound (kPosInf unless compute_local_bounds() ran).
template <DpModel M>
std::vector<SubProblem<typename M::State>> exact_cutset(const DecisionDiagram<M>& dd,
                                                        const SubProblem<typename M::State>& from) {
  std::vector<SubProblem<typename M::State>> cutset;
  const auto nodes = dd.layer(dd.lel());
  cutset.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    SubProblem<typename M::State> sub;
    sub.state = nodes[i].state;
    sub.value_top = nodes[i].value_top;
    sub.path = from.path;
    const auto tail = dd.path_to(dd.lel(), i);
    sub.path.insert(sub.path.end(), tail.begin(), tail.end());
    sub.ub = nodes[i].local_bound;
    cutset.push_back(std::move(sub));
  }
  return cutset;
}

// Graphviz rendering. Inexact nodes get a double border; relaxed diagrams
// draw every retained arc (relaxed weights), others only the best arcs.
template <DescribableModel M>
std::string to_dot(const DecisionDiagram<M>& dd, const M& model) {
  std::ostringstream out;
  out << "digraph dd {\n  rankdir=TB;\n  node [shape=box];\n";
  auto id = [](std::size_t layer, std::size_t i) { return "n" + std::to_string(layer) + "_" + std::to_string(i); };
  for (std::size_t l = dd.root_depth(); l <= dd.last_layer(); ++l) {
    const auto nodes = dd.layer(l);
    out << "  { rank=same;";
    for (std::size_t i = 0; i < nodes.size(); ++i) out << ' ' << id(l, i) << ';';
    out << " }\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      out << "  " << id(l, i) << " [label=\"" << model.describe(n.state) << "\\nv=" << n.value_top << "\"";
      if (!n.exact) out << ", peripheries=2";
      out << "];\n";
      if (l == dd.root_depth()) continue;
      auto edge = [&](const Arc& a, bool bold) {
        out << "  " << id(l - 1, a.parent) << " -> " << id(l, i) << " [label=\"x" << a.decision.variable << "="
            << a.decision.value << " (" << a.weight << ")\"";
        if (bold) out << ", style=bold";
        out << "];\n";
      };
      if (dd.keeps_arcs()) {
        for (const auto& a : n.inbound) edge(a, false);
      } else if (n.best_arc) {
        edge(*n.best_arc, false);
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ddbb
