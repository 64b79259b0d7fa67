#include "ddbb/problems/tsptw.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ddbb::tsptw {

Model::Model(const TsptwInstance& instance, ModelOptions options) : inst_(instance), options_(options) {
  if (inst_.n == 0) throw std::invalid_argument("TSPTW instance needs at least the depot");
}

State Model::initial_state() const {
  State s;
  s.position = BitSet(inst_.n);
  s.position.set(0);
  s.earliest = 0;
  s.latest = 0;
  s.must_visit = BitSet(inst_.n, true);
  s.must_visit.reset(0);
  s.may_visit = BitSet(inst_.n);
  return s;
}

std::vector<int> Model::domain(const State& s, std::size_t layer) const {
  if (layer + 1 == inst_.n) return {0};
  std::vector<int> out;
  (s.must_visit | s.may_visit).for_each([&](std::size_t c) { out.push_back(static_cast<int>(c)); });
  return out;
}

std::vector<int> Model::full_domain(std::size_t layer) const {
  if (layer + 1 == inst_.n) return {0};
  std::vector<int> out;
  for (std::size_t c = 1; c < inst_.n; ++c) out.push_back(static_cast<int>(c));
  return out;
}

Value Model::travel(const State& s, std::size_t to) const {
  Value best = std::numeric_limits<Value>::max();
  s.position.for_each([&](std::size_t p) { best = std::min(best, inst_.distance(p, to)); });
  return best;
}

std::optional<State> Model::transition(const State& s, Decision d) const {
  const std::size_t n = inst_.n;
  const std::size_t k = d.variable;
  if (d.value < 0 || static_cast<std::size_t>(d.value) >= n) return std::nullopt;
  const auto x = static_cast<std::size_t>(d.value);

  const bool closing = k + 1 == n;
  if (closing) {
    if (x != 0 || s.must_visit.any()) return std::nullopt;
  } else if (x == 0 || !(s.must_visit.test(x) || s.may_visit.test(x))) {
    return std::nullopt;
  }

  Value min_arrival = std::numeric_limits<Value>::max();
  Value max_arrival = std::numeric_limits<Value>::min();
  s.position.for_each([&](std::size_t p) {
    min_arrival = std::min(min_arrival, s.earliest + inst_.distance(p, x));
    max_arrival = std::max(max_arrival, s.latest + inst_.distance(p, x));
  });
  if (min_arrival > inst_.latest[x]) return std::nullopt;
  if (options_.reject_early_arrivals && max_arrival < inst_.earliest[x]) return std::nullopt;

  State next;
  next.position = BitSet(n);
  next.position.set(x);
  next.earliest = std::max(inst_.earliest[x], min_arrival);
  next.latest = std::max(next.earliest, std::min(inst_.latest[x], max_arrival));
  next.must_visit = s.must_visit;
  next.may_visit = s.may_visit;
  if (!closing) {
    next.must_visit.reset(x);
    next.may_visit.reset(x);
    // Cities still to visit after this one.
    const std::size_t remaining = n - 2 - k;
    if (next.must_visit.count() > remaining) return std::nullopt;
  }
  return next;
}

Value Model::transition_cost(const State& s, Decision d) const {
  const auto x = static_cast<std::size_t>(d.value);
  const Value t = travel(s, x);
  const Value wait = std::max<Value>(0, inst_.earliest[x] - (s.earliest + t));
  return -(t + wait);
}

std::optional<Value> Model::rough_lower_bound(const State& s, std::size_t layer) const {
  const std::size_t n = inst_.n;
  const Value deadline = inst_.latest[0];
  if (layer >= n) return s.earliest;

  const std::size_t remaining = n - 1 - layer;  // cities still to visit
  const std::size_t must_count = s.must_visit.count();
  if (must_count > remaining) return std::nullopt;

  // Too many unreachable optional cities to fill the remaining visits.
  std::size_t reachable_may = 0;
  s.may_visit.for_each([&](std::size_t p) {
    if (s.earliest + inst_.shortest_edge[p] <= inst_.latest[p]) ++reachable_may;
  });
  if (reachable_may < remaining - must_count) return std::nullopt;

  // A mandatory city cannot be reached in time.
  bool unreachable_must = false;
  Value entering = 0;
  s.must_visit.for_each([&](std::size_t p) {
    if (s.earliest + inst_.shortest_edge[p] > inst_.latest[p]) unreachable_must = true;
    entering += inst_.shortest_edge[p];
  });
  if (unreachable_must) return std::nullopt;

  // Cannot be back at the depot in time.
  if (s.earliest + entering > deadline) return std::nullopt;

  if (must_count > 0) {
    Value back = std::numeric_limits<Value>::max();
    (s.must_visit | s.may_visit).for_each([&](std::size_t p) { back = std::min(back, inst_.distance(p, 0)); });
    const Value bound = s.earliest + entering + back;
    if (bound > deadline) return std::nullopt;
    return bound;
  }

  if (remaining == 0) return s.earliest + travel(s, 0);

  // Only optional cities left (merged states): at least one more visit and a
  // return from one of them.
  Value enter = std::numeric_limits<Value>::max();
  Value back = std::numeric_limits<Value>::max();
  s.may_visit.for_each([&](std::size_t p) {
    enter = std::min(enter, inst_.shortest_edge[p]);
    back = std::min(back, inst_.distance(p, 0));
  });
  return s.earliest + enter + back;
}

Value Model::fast_bound(const State& s, std::size_t layer, Value) const {
  const auto lb = rough_lower_bound(s, layer);
  return lb ? -*lb : kNegInf;
}

std::string Model::describe(const State& s) const {
  auto set = [](const BitSet& b) {
    std::string out = "{";
    bool first = true;
    b.for_each([&](std::size_t i) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    });
    return out + "}";
  };
  return "pos=" + set(s.position) + " t=[" + std::to_string(s.earliest) + "," + std::to_string(s.latest) +
         "] must=" + set(s.must_visit) + " may=" + set(s.may_visit);
}

State Relaxation::merge(std::span<const State* const> states, std::size_t) const {
  if (states.empty()) throw std::invalid_argument("cannot merge an empty selection");
  State out = *states.front();
  BitSet open = out.must_visit | out.may_visit;
  for (const auto* s : states.subspan(1)) {
    out.position |= s->position;
    out.earliest = std::min(out.earliest, s->earliest);
    out.latest = std::max(out.latest, s->latest);
    out.must_visit &= s->must_visit;
    open |= s->must_visit;
    open |= s->may_visit;
  }
  out.may_visit = open.subtract(out.must_visit);
  return out;
}

}  // namespace ddbb::tsptw
