#include "vvckit/wavefront.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>
#include <queue>
#include <thread>

namespace vvckit {

namespace {

using Clock = std::chrono::steady_clock;

int64_t ns_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

using ReadyQueue = std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>>;

}  // namespace

NodeId TaskGraph::add_node(uint32_t synthetic_us) {
  cost_us_.push_back(synthetic_us);
  succ_.emplace_back();
  pred_.emplace_back();
  return static_cast<NodeId>(cost_us_.size() - 1);
}

void TaskGraph::add_edge(NodeId prerequisite, NodeId dependent) {
  if (prerequisite >= size() || dependent >= size()) throw ContractViolation("edge endpoint does not exist");
  if (prerequisite == dependent) throw ContractViolation("self-dependency");
  if (has_edge(prerequisite, dependent)) return;
  succ_[prerequisite].push_back(dependent);
  pred_[dependent].push_back(prerequisite);
  ++edges_;
}

bool TaskGraph::has_edge(NodeId prerequisite, NodeId dependent) const {
  const auto& s = succ_.at(prerequisite);
  return std::find(s.begin(), s.end(), dependent) != s.end();
}

std::vector<NodeId> TaskGraph::topological_order() const {
  std::vector<std::size_t> indeg(size());
  ReadyQueue ready;
  for (NodeId n = 0; n < size(); ++n) {
    indeg[n] = pred_[n].size();
    if (indeg[n] == 0) ready.push(n);
  }
  std::vector<NodeId> order;
  order.reserve(size());
  while (!ready.empty()) {
    const NodeId n = ready.top();
    ready.pop();
    order.push_back(n);
    for (NodeId s : succ_[n])
      if (--indeg[s] == 0) ready.push(s);
  }
  if (order.size() != size()) throw ContractViolation("task graph contains a cycle");
  return order;
}

TaskGraph wpp_dependencies(int rows, int cols, uint32_t synthetic_us) {
  if (rows < 1 || cols < 1) throw ContractViolation("WPP grid dimensions must be at least 1");
  TaskGraph g;
  for (int i = 0; i < rows * cols; ++i) g.add_node(synthetic_us);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const NodeId n = wpp_node(r, c, cols);
      if (c > 0) g.add_edge(wpp_node(r, c - 1, cols), n);
      if (r > 0 && c + 1 < cols) g.add_edge(wpp_node(r - 1, c + 1, cols), n);
    }
  }
  return g;
}

std::size_t critical_path_length(const TaskGraph& g) {
  const std::vector<NodeId> order = g.topological_order();
  std::vector<std::size_t> len(g.size(), 1);
  std::size_t best = 0;
  for (NodeId n : order) {
    for (NodeId p : g.predecessors(n)) len[n] = std::max(len[n], len[p] + 1);
    best = std::max(best, len[n]);
  }
  return best;
}

bool RunStats::dependencies_respected(const TaskGraph& g) const {
  if (start_ns.size() != g.size() || finish_ns.size() != g.size()) return false;
  for (NodeId n = 0; n < g.size(); ++n) {
    if (finish_ns[n] < start_ns[n]) return false;
    for (NodeId p : g.predecessors(n))
      if (finish_ns[p] > start_ns[n]) return false;
  }
  return true;
}

TaskFailure::TaskFailure(NodeId node, const std::string& what)
    : Error("task " + std::to_string(node) + " failed: " + what), node_(node) {}

RunStats execute(const TaskGraph& g, int workers, const TaskFn& work) {
  if (workers < 1) throw ContractViolation("worker count must be at least 1");
  (void)g.topological_order();  // rejects cycles before any work starts

  RunStats stats;
  stats.workers = workers;
  stats.busy_ns.assign(static_cast<std::size_t>(workers), 0);
  stats.start_ns.assign(g.size(), 0);
  stats.finish_ns.assign(g.size(), 0);
  stats.worker_of.assign(g.size(), -1);
  stats.completion_order.reserve(g.size());

  std::mutex mu;
  std::condition_variable cv;
  ReadyQueue ready;
  std::vector<std::size_t> indeg(g.size());
  for (NodeId n = 0; n < g.size(); ++n) {
    indeg[n] = g.predecessors(n).size();
    if (indeg[n] == 0) ready.push(n);
  }
  std::size_t done = 0;
  std::size_t running = 0;
  std::optional<TaskFailure> failure;

  const Clock::time_point t0 = Clock::now();
  auto worker_loop = [&](int w) {
    std::unique_lock lock(mu);
    for (;;) {
      cv.wait(lock, [&] { return failure || done == g.size() || !ready.empty(); });
      if (failure || done == g.size()) return;
      const NodeId n = ready.top();
      ready.pop();
      ++running;
      stats.start_ns[n] = ns_since(t0);
      stats.worker_of[n] = w;
      lock.unlock();

      std::optional<TaskFailure> err;
      try {
        work(n, w);
      } catch (const std::exception& e) {
        err.emplace(n, e.what());
      } catch (...) {
        err.emplace(n, "unknown exception");
      }
      const int64_t finish = ns_since(t0);

      lock.lock();
      --running;
      stats.finish_ns[n] = finish;
      stats.busy_ns[static_cast<std::size_t>(w)] += finish - stats.start_ns[n];
      if (err) {
        if (!failure) failure = std::move(err);
        cv.notify_all();
        return;
      }
      stats.completion_order.push_back(n);
      ++done;
      for (NodeId s : g.successors(n))
        if (--indeg[s] == 0) ready.push(s);
      cv.notify_all();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop, w);
  }
  stats.makespan_ns = ns_since(t0);
  if (failure) throw *failure;
  return stats;
}

const char* synthetic_mode_name(SyntheticMode m) { return m == SyntheticMode::kSpin ? "spin" : "sleep"; }

TaskFn synthetic_work(const TaskGraph& g, SyntheticMode mode) {
  return [&g, mode](NodeId n, int) {
    const Clock::time_point deadline = Clock::now() + std::chrono::microseconds(g.synthetic_us(n));
    if (mode == SyntheticMode::kSleep) {
      std::this_thread::sleep_until(deadline);
    } else {
      while (Clock::now() < deadline) {
      }
    }
  };
}

RunStats execute_synthetic(const TaskGraph& g, int workers, SyntheticMode mode) {
  return execute(g, workers, synthetic_work(g, mode));
}

std::vector<SpeedupRow> speedup_report(const TaskGraph& g, std::span<const int> worker_counts, const TaskFn& work) {
  if (worker_counts.empty()) throw ContractViolation("worker count list is empty");
  for (int w : worker_counts)
    if (w < 1) throw ContractViolation("worker count must be at least 1");

  std::optional<int64_t> base;
  std::vector<SpeedupRow> rows;
  for (int w : worker_counts) {
    const RunStats s = execute(g, w, work);
    if (w == 1 && !base) base = s.makespan_ns;
    rows.push_back({w, s.makespan_ns, 0.0});
  }
  if (!base) base = execute(g, 1, work).makespan_ns;
  for (auto& r : rows) r.speedup = r.makespan_ns > 0 ? static_cast<double>(*base) / r.makespan_ns : 1.0;
  return rows;
}

std::vector<SpeedupRow> speedup_report(const TaskGraph& g, std::span<const int> worker_counts, SyntheticMode mode) {
  return speedup_report(g, worker_counts, synthetic_work(g, mode));
}

}  // namespace vvckit
