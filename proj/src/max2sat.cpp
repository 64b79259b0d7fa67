#include "ddbb/problems/max2sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace ddbb::max2sat {

namespace {
Value pos(Value v) { return std::max<Value>(0, v); }
}  // namespace

Model::Model(const Wcnf& formula)
    : n_(formula.variables),
      pairs_(formula.variables * formula.variables * 4, 0),
      units_(formula.variables * 2, 0),
      tautologies_(formula.variables, 0) {
  auto var = [&](int lit) {
    const auto v = static_cast<std::size_t>(std::abs(lit));
    if (v == 0 || v > n_) throw std::invalid_argument("literal out of range");
    return v - 1;
  };
  for (const auto& c : formula.clauses) {
    const std::size_t a = var(c.first);
    const int pa = c.first > 0 ? 1 : 0;
    if (c.second == 0) {
      units_[a * 2 + static_cast<std::size_t>(pa)] += c.weight;
      continue;
    }
    const std::size_t b = var(c.second);
    const int pb = c.second > 0 ? 1 : 0;
    if (a == b) {
      if (pa == pb) {
        units_[a * 2 + static_cast<std::size_t>(pa)] += c.weight;
      } else {
        tautologies_[a] += c.weight;
      }
      continue;
    }
    pair_ref(a, b, pa, pb) += c.weight;
    pair_ref(b, a, pb, pa) += c.weight;
  }

  pre_.tautology_head.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < n_; ++k) pre_.tautology_head[k + 1] = pre_.tautology_head[k] + tautologies_[k];
  pre_.root_value = pre_.tautology_head[n_];

  // Satisfied weight of the clauses between i and j for values (vi, vj).
  auto satisfied = [&](std::size_t i, std::size_t j, int vi, int vj) {
    Value s = 0;
    for (int pi = 0; pi < 2; ++pi)
      for (int pj = 0; pj < 2; ++pj)
        if (pi == vi || pj == vj) s += pair_weight(i, j, pi, pj);
    return s;
  };
  pre_.best_tail.assign(n_ + 1, 0);
  for (std::size_t k = n_; k-- > 0;) {
    Value add = tautologies_[k] + std::max(unit_weight(k, 1), unit_weight(k, 0));
    for (std::size_t j = k + 1; j < n_; ++j) {
      add += std::max({satisfied(k, j, 1, 1), satisfied(k, j, 1, 0), satisfied(k, j, 0, 1), satisfied(k, j, 0, 0)});
    }
    pre_.best_tail[k] = pre_.best_tail[k + 1] + add;
  }
}

std::optional<State> Model::transition(const State& s, Decision d) const {
  if (d.value != kFalse && d.value != kTrue) return std::nullopt;
  const std::size_t k = d.variable;
  const int falsified = 1 - d.value;  // polarity of k's literal made false
  State next = s;
  next.benefits[k] = 0;
  for (std::size_t l = k + 1; l < n_; ++l)
    next.benefits[l] += pair_weight(k, l, falsified, 1) - pair_weight(k, l, falsified, 0);
  return next;
}

// Clauses satisfied by k's literal are collected now. Clauses whose k-literal
// is falsified become unit clauses on l; of l's pending true/false benefits
// the smaller one is collected now, since l will earn at least that much.
Value Model::transition_cost(const State& s, Decision d) const {
  const std::size_t k = d.variable;
  const int val = d.value;
  const int falsified = 1 - val;
  const Value sk = s.benefits[k];
  Value cost = (val == kTrue ? pos(sk) : pos(-sk)) + unit_weight(k, val);
  for (std::size_t l = k + 1; l < n_; ++l) {
    cost += pair_weight(k, l, val, 0) + pair_weight(k, l, val, 1);
    const Value sl = s.benefits[l];
    const Value to_true = pos(sl) + pair_weight(k, l, falsified, 1);
    const Value to_false = pos(-sl) + pair_weight(k, l, falsified, 0);
    cost += std::min(to_true, to_false);
  }
  return cost;
}

Value Model::fast_bound(const State& s, std::size_t layer, Value value_top) const {
  Value bound = value_top;
  for (std::size_t i = layer; i < n_; ++i) bound += std::llabs(s.benefits[i]);
  return bound + pre_.best_tail[layer] + pre_.tautology_head[layer] - pre_.root_value;
}

}  // namespace ddbb::max2sat
