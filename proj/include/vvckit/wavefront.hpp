#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vvckit/error.hpp"

namespace vvckit {

using NodeId = uint32_t;

// Dependency DAG. Node ids are dense and assigned in insertion order; edges
// run prerequisite -> dependent. Cycles are representable so that they can be
// detected; every consumer rejects them.
class TaskGraph {
 public:
  NodeId add_node(uint32_t synthetic_us = 0);
  void add_edge(NodeId prerequisite, NodeId dependent);

  std::size_t size() const { return cost_us_.size(); }
  std::size_t edge_count() const { return edges_; }
  uint32_t synthetic_us(NodeId n) const { return cost_us_.at(n); }
  void set_synthetic_us(NodeId n, uint32_t us) { cost_us_.at(n) = us; }
  std::span<const NodeId> successors(NodeId n) const { return succ_.at(n); }
  std::span<const NodeId> predecessors(NodeId n) const { return pred_.at(n); }
  bool has_edge(NodeId prerequisite, NodeId dependent) const;

  // Kahn order, smallest ready id first. Throws ContractViolation on a cycle.
  std::vector<NodeId> topological_order() const;

 private:
  std::vector<uint32_t> cost_us_;
  std::vector<std::vector<NodeId>> succ_;
  std::vector<std::vector<NodeId>> pred_;
  std::size_t edges_ = 0;
};

// CTU (r, c) is node r * cols + c; it waits for (r, c-1) and (r-1, c+1).
TaskGraph wpp_dependencies(int rows, int cols, uint32_t synthetic_us = 0);

inline NodeId wpp_node(int r, int c, int cols) { return static_cast<NodeId>(r * cols + c); }

// Longest chain counting nodes. Throws ContractViolation on a cycle.
std::size_t critical_path_length(const TaskGraph& g);

struct RunStats {
  int workers = 0;
  int64_t makespan_ns = 0;
  std::vector<int64_t> busy_ns;        // per worker
  std::vector<NodeId> completion_order;
  std::vector<int64_t> start_ns;       // per node, relative to run start
  std::vector<int64_t> finish_ns;
  std::vector<int> worker_of;          // per node

  // True when every node finished after it started and no node started
  // before all of its prerequisites finished.
  bool dependencies_respected(const TaskGraph& g) const;
};

// Raised by execute when a work item throws; remaining ready nodes are not
// started.
class TaskFailure : public Error {
 public:
  TaskFailure(NodeId node, const std::string& what);
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

using TaskFn = std::function<void(NodeId node, int worker)>;

RunStats execute(const TaskGraph& g, int workers, const TaskFn& work);

enum class SyntheticMode { kSpin, kSleep };

const char* synthetic_mode_name(SyntheticMode m);

// Each node burns (spin) or waits out (sleep) its synthetic cost.
TaskFn synthetic_work(const TaskGraph& g, SyntheticMode mode);
RunStats execute_synthetic(const TaskGraph& g, int workers, SyntheticMode mode = SyntheticMode::kSpin);

struct SpeedupRow {
  int workers = 0;
  int64_t makespan_ns = 0;
  double speedup = 0.0;
};

// One run per count; speedup relative to a single-worker run of the same work.
std::vector<SpeedupRow> speedup_report(const TaskGraph& g, std::span<const int> worker_counts, const TaskFn& work);
std::vector<SpeedupRow> speedup_report(const TaskGraph& g, std::span<const int> worker_counts,
                                       SyntheticMode mode = SyntheticMode::kSpin);

}  // namespace vvckit
