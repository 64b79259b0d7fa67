#pragma once

// Branch-and-bound over decision diagrams with local-bound and rough-upper-
// bound pruning.

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <queue>
#include <thread>
#include <vector>

#include "ddbb/mdd.hpp"
#include "ddbb/model.hpp"
#include "ddbb/pruning.hpp"

namespace ddbb {

struct SolverConfig {
  std::optional<std::size_t> width;  // default: unfixed variables of each subproblem
  bool rub = true;
  bool locb = true;
  double timeout_seconds = 1800.0;
  std::size_t workers = 1;
};

enum class Status { kOptimal, kTimeout };

struct SolverStats {
  std::size_t explored = 0;           // subproblems popped and compiled
  std::size_t skipped_at_pop = 0;     // popped but discarded by their local bound
  std::size_t pruned_at_enqueue = 0;  // cutset nodes never enqueued
  std::size_t restricted_compiled = 0;
  std::size_t relaxed_compiled = 0;
  std::size_t nodes_created = 0;
  std::size_t rub_pruned = 0;
};

struct Outcome {
  Status status = Status::kOptimal;
  Value incumbent = kNegInf;  // kNegInf when no feasible solution is known
  std::optional<Assignment> solution;
  Value best_bound = kNegInf;
  double end_gap = 0.0;  // percent, in the problem's own objective sense
  std::size_t explored = 0;
  SolverStats stats;
  std::chrono::duration<double> duration{0};
};

// 100 * (|ub| - |lb|) / |ub|, with a closed gap reported as 0.
// Requires lb <= ub.
double end_gap(double lb, double ub);

// Models of minimization problems declare `static constexpr bool kMinimize = true`
// and expose negated costs; reporting flips signs back.
template <class M>
constexpr bool is_minimization() {
  if constexpr (requires { M::kMinimize; }) {
    return M::kMinimize;
  } else {
    return false;
  }
}

// Gap between an incumbent and a bound expressed in maximization units.
template <class M>
double outcome_gap(Value incumbent, Value bound) {
  if (incumbent == bound) return 0.0;
  if (!is_finite(incumbent) || !is_finite(bound)) return 100.0;
  if constexpr (is_minimization<M>()) {
    return end_gap(static_cast<double>(-bound), static_cast<double>(-incumbent));
  } else {
    return end_gap(static_cast<double>(incumbent), static_cast<double>(bound));
  }
}

// Upper bound given to a cutset node when it is enqueued. Clamping to the
// parent bound keeps the global bound from ever increasing.
inline Value cutset_bound(bool locb, Value local_bound, Value relaxed_bound, Value parent_ub) {
  return std::min(locb ? local_bound : relaxed_bound, parent_ub);
}

// A subproblem whose bound does not beat the incumbent cannot improve it.
inline bool dominated(Value ub, Value incumbent) { return ub <= incumbent; }

// Priority queue of open subproblems: highest upper bound first, then
// longest prefix, then first-in first-out.
template <class State>
class Fringe {
 public:
  void push(SubProblem<State> sub) { heap_.push(Entry{std::move(sub), next_seq_++}); }

  SubProblem<State> pop() {
    SubProblem<State> sub = std::move(const_cast<Entry&>(heap_.top()).sub);
    heap_.pop();
    return sub;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Value max_ub() const { return heap_.empty() ? kNegInf : heap_.top().sub.ub; }

 private:
  struct Entry {
    SubProblem<State> sub;
    std::uint64_t seq;
  };
  struct LowerPriority {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.sub.ub != b.sub.ub) return a.sub.ub < b.sub.ub;
      if (a.sub.value_top != b.sub.value_top) return a.sub.value_top < b.sub.value_top;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, LowerPriority> heap_;
  std::uint64_t next_seq_ = 0;
};

template <DpModel M, DpRelaxation<M> R>
class Solver {
 public:
  using State = typename M::State;
  using Diagram = DecisionDiagram<M>;

  // Hooks for instrumentation. With several workers they are invoked
  // concurrently and must synchronize on their own.
  struct Observer {
    // After a relaxed diagram whose bound beats the incumbent, before its
    // cutset is enqueued. Local bounds are set only when LocB is enabled.
    std::function<void(const Diagram& relaxed, Value incumbent)> on_relaxed;
    // After each popped subproblem, under the solver lock: incumbent and
    // max(incumbent, best fringe bound).
    std::function<void(Value incumbent, Value global_ub)> on_iteration;
  };

  Solver(const M& model, const R& relaxation, SolverConfig config, Observer observer = {})
      : model_(model), relaxation_(relaxation), config_(config), observer_(std::move(observer)) {
    if (config_.workers == 0) config_.workers = 1;
    if (config_.width && *config_.width == 0) throw std::invalid_argument("width must be at least 1");
  }

  Outcome solve() {
    start_ = Clock::now();
    fringe_ = {};
    incumbent_ = kNegInf;
    solution_.reset();
    stats_ = {};
    active_ = 0;
    stop_ = false;
    timed_out_ = false;

    fringe_.push(root_subproblem(model_));

    if (config_.workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(config_.workers);
      for (std::size_t i = 0; i < config_.workers; ++i) pool.emplace_back([this] { work(); });
      for (auto& t : pool) t.join();
    }

    Outcome out;
    out.status = timed_out_ ? Status::kTimeout : Status::kOptimal;
    out.incumbent = incumbent_;
    out.solution = solution_;
    out.best_bound = timed_out_ ? std::max(incumbent_, fringe_.max_ub()) : incumbent_;
    out.end_gap = timed_out_ ? outcome_gap<M>(out.incumbent, out.best_bound) : 0.0;
    out.stats = stats_;
    out.explored = stats_.explored;
    out.duration = Clock::now() - start_;
    return out;
  }

 private:
  using Clock = std::chrono::steady_clock;

  void work() {
    std::unique_lock lock(mutex_);
    while (true) {
      cv_.wait(lock, [&] { return stop_ || !fringe_.empty() || active_ == 0; });
      if (stop_) break;
      if (fringe_.empty()) {
        // active_ == 0: nothing left anywhere.
        cv_.notify_all();
        break;
      }
      if (elapsed() > config_.timeout_seconds) {
        stop_ = true;
        timed_out_ = true;
        cv_.notify_all();
        break;
      }
      SubProblem<State> sub = fringe_.pop();
      ++active_;
      lock.unlock();
      explore(sub);
      lock.lock();
      --active_;
      if (observer_.on_iteration) observer_.on_iteration(incumbent_, std::max(incumbent_, fringe_.max_ub()));
      cv_.notify_all();
    }
  }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  Value incumbent() {
    std::lock_guard guard(mutex_);
    return incumbent_;
  }

  std::size_t width_for(const SubProblem<State>& sub) const {
    if (config_.width) return *config_.width;
    return std::max<std::size_t>(1, model_.variable_count() - sub.depth());
  }

  void explore(const SubProblem<State>& sub) {
    SolverStats local;
    if (config_.locb && dominated(sub.ub, incumbent())) {
      ++local.skipped_at_pop;
      merge_stats(local);
      return;
    }
    ++local.explored;
    const std::size_t width = width_for(sub);

    const auto restricted = Diagram::compile(
        model_, sub, CompileOptions{DiagramKind::kRestricted, width, incumbent(), config_.rub});
    ++local.restricted_compiled;
    local.nodes_created += restricted.nodes_created();
    local.rub_pruned += restricted.rub_pruned();
    if (auto best = best_solution(restricted)) {
      std::lock_guard guard(mutex_);
      if (best->value > incumbent_) {
        incumbent_ = best->value;
        Assignment full = sub.path;
        full.insert(full.end(), best->decisions.begin(), best->decisions.end());
        solution_ = std::move(full);
      }
    }
    if (restricted.is_exact()) {
      merge_stats(local);
      return;
    }

    auto relaxed = Diagram::compile(
        model_, relaxation_, sub,
        CompileOptions{DiagramKind::kRelaxed, std::max<std::size_t>(2, width), incumbent(), config_.rub});
    ++local.relaxed_compiled;
    local.nodes_created += relaxed.nodes_created();
    local.rub_pruned += relaxed.rub_pruned();

    const Value relaxed_bound = relaxed.best_value();
    const Value lb = incumbent();
    if (!(relaxed_bound > lb)) {
      merge_stats(local);
      return;
    }
    if (config_.locb) compute_local_bounds(relaxed);
    if (observer_.on_relaxed) observer_.on_relaxed(relaxed, lb);

    auto cutset = exact_cutset(relaxed, sub);
    std::lock_guard guard(mutex_);
    for (auto& child : cutset) {
      const Value ub = cutset_bound(config_.locb, child.ub, relaxed_bound, sub.ub);
      if (config_.locb && dominated(ub, incumbent_)) {
        ++local.pruned_at_enqueue;
        continue;
      }
      child.ub = ub;
      fringe_.push(std::move(child));
    }
    add_stats(local);
  }

  void merge_stats(const SolverStats& local) {
    std::lock_guard guard(mutex_);
    add_stats(local);
  }

  void add_stats(const SolverStats& s) {
    stats_.explored += s.explored;
    stats_.skipped_at_pop += s.skipped_at_pop;
    stats_.pruned_at_enqueue += s.pruned_at_enqueue;
    stats_.restricted_compiled += s.restricted_compiled;
    stats_.relaxed_compiled += s.relaxed_compiled;
    stats_.nodes_created += s.nodes_created;
    stats_.rub_pruned += s.rub_pruned;
  }

  const M& model_;
  const R& relaxation_;
  SolverConfig config_;
  Observer observer_;

  std::mutex mutex_;
  std::condition_variable cv_;
  Fringe<State> fringe_;
  Value incumbent_ = kNegInf;
  std::optional<Assignment> solution_;
  SolverStats stats_;
  std::size_t active_ = 0;
  bool stop_ = false;
  bool timed_out_ = false;
  Clock::time_point start_;
};

template <DpModel M, DpRelaxation<M> R>
Outcome solve(const M& model, const R& relaxation, const SolverConfig& config) {
  return Solver<M, R>(model, relaxation, config).solve();
}

}  // namespace ddbb
