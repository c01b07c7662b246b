// Copyright 2026 The stldecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <set>
#include <vector>

#include "stldecomp/stl.hpp"

namespace stldecomp {

/// Undirected graph on nodes 1..N. Edges are stored canonically (i < j);
/// self-loops are flags per node and only used by task graphs.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int num_nodes = 0);
  UndirectedGraph(int num_nodes, const std::vector<Edge>& edges);

  int num_nodes() const { return num_nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  void add_edge(AgentId i, AgentId j);
  void remove_edge(AgentId i, AgentId j);
  bool has_edge(AgentId i, AgentId j) const;

  void set_self_loop(AgentId i, bool present = true);
  bool has_self_loop(AgentId i) const;
  std::vector<AgentId> self_loops() const;

  /// Sorted neighbours, self excluded.
  std::vector<AgentId> neighbors(AgentId i) const;
  bool is_connected() const;

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  void check_node(AgentId i) const;

  int num_nodes_;
  std::set<Edge> edges_;
  std::vector<bool> self_loops_;
};

/// Simple directed path through a graph; nodes.front() is the source.
struct Path {
  std::vector<AgentId> nodes;

  AgentId source() const { return nodes.front(); }
  AgentId target() const { return nodes.back(); }
  std::size_t num_edges() const { return nodes.size() - 1; }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Closed walk with nodes.front() == nodes.back() and a simple interior.
struct Cycle {
  std::vector<AgentId> nodes;

  std::size_t num_edges() const { return nodes.size() - 1; }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Throws InputError unless `path` is simple, has >= 2 nodes and follows
/// edges of `g`.
void validate(const Path& path, const UndirectedGraph& g);
void validate(const Cycle& cycle, const UndirectedGraph& g);

/// Minimum-hop path from i to j. Among all minimum-hop paths, the one with
/// the lexicographically smallest node sequence is returned.
Path shortest_path(const UndirectedGraph& g, AgentId i, AgentId j);

/// Directed edges (nodes[k], nodes[k+1]) in order.
std::vector<Edge> edge_sequence(const std::vector<AgentId>& nodes);
inline std::vector<Edge> edge_sequence(const Path& p) { return edge_sequence(p.nodes); }
inline std::vector<Edge> edge_sequence(const Cycle& c) { return edge_sequence(c.nodes); }

/// Removes the task edges missing from `gc` and adds every edge used by the
/// replacement paths. Self-loops are preserved.
UndirectedGraph rewrite_task_graph(const UndirectedGraph& g_task, const UndirectedGraph& gc,
                                   const std::map<Edge, Path>& paths);

/// Every simple cycle with at most `max_len` distinct nodes, each reported once
/// starting at its smallest node and oriented towards the smaller of that
/// node's two cycle neighbours.
std::vector<Cycle> enumerate_cycles(const UndirectedGraph& g, int max_len = 6);

}  // namespace stldecomp
