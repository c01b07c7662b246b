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


#include "stldecomp/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "stldecomp/errors.hpp"

namespace stldecomp {

using detail::throw_input;

UndirectedGraph::UndirectedGraph(int num_nodes)
    : num_nodes_(num_nodes), self_loops_(static_cast<std::size_t>(std::max(num_nodes, 0)), false) {
  if (num_nodes < 0) throw_input("graph node count must be non-negative");
}

UndirectedGraph::UndirectedGraph(int num_nodes, const std::vector<Edge>& edges)
    : UndirectedGraph(num_nodes) {
  for (const auto& e : edges) add_edge(e.from, e.to);
}

void UndirectedGraph::check_node(AgentId i) const {
  if (i < 1 || i > num_nodes_)
    throw_input("node " + std::to_string(i) + " outside 1.." + std::to_string(num_nodes_));
}

void UndirectedGraph::add_edge(AgentId i, AgentId j) {
  check_node(i);
  check_node(j);
  if (i == j) throw_input("edges join two distinct nodes; use set_self_loop");
  edges_.insert(Edge{i, j}.canonical());
}

void UndirectedGraph::remove_edge(AgentId i, AgentId j) { edges_.erase(Edge{i, j}.canonical()); }

bool UndirectedGraph::has_edge(AgentId i, AgentId j) const {
  return edges_.count(Edge{i, j}.canonical()) > 0;
}

void UndirectedGraph::set_self_loop(AgentId i, bool present) {
  check_node(i);
  self_loops_[static_cast<std::size_t>(i - 1)] = present;
}

bool UndirectedGraph::has_self_loop(AgentId i) const {
  check_node(i);
  return self_loops_[static_cast<std::size_t>(i - 1)];
}

std::vector<AgentId> UndirectedGraph::self_loops() const {
  std::vector<AgentId> out;
  for (int i = 1; i <= num_nodes_; ++i)
    if (self_loops_[static_cast<std::size_t>(i - 1)]) out.push_back(i);
  return out;
}

std::vector<AgentId> UndirectedGraph::neighbors(AgentId i) const {
  check_node(i);
  std::vector<AgentId> out;
  for (const auto& e : edges_) {
    if (e.from == i) out.push_back(e.to);
    else if (e.to == i) out.push_back(e.from);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Hop distances from `source`; -1 marks unreachable nodes. Index 0 unused.
std::vector<int> bfs(const UndirectedGraph& g, AgentId source) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes() + 1), -1);
  std::deque<AgentId> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const AgentId u = queue.front();
    queue.pop_front();
    for (AgentId v : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

bool UndirectedGraph::is_connected() const {
  if (num_nodes_ <= 1) return true;
  const auto dist = bfs(*this, 1);
  return std::none_of(dist.begin() + 1, dist.end(), [](int d) { return d < 0; });
}

void validate(const Path& path, const UndirectedGraph& g) {
  if (path.nodes.size() < 2) throw_input("path needs at least two nodes");
  auto sorted = path.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw_input("path repeats a node");
  for (std::size_t k = 0; k + 1 < path.nodes.size(); ++k)
    if (!g.has_edge(path.nodes[k], path.nodes[k + 1]))
      throw_input("path edge " + to_string(Edge{path.nodes[k], path.nodes[k + 1]}) +
                  " is not in the graph");
}

void validate(const Cycle& cycle, const UndirectedGraph& g) {
  if (cycle.nodes.size() < 4) throw_input("cycle needs at least three distinct nodes");
  if (cycle.nodes.front() != cycle.nodes.back()) throw_input("cycle must close on its first node");
  Path interior{{cycle.nodes.begin(), cycle.nodes.end() - 1}};
  validate(interior, g);
  if (!g.has_edge(cycle.nodes[cycle.nodes.size() - 2], cycle.nodes.back()))
    throw_input("cycle closing edge is not in the graph");
}

Path shortest_path(const UndirectedGraph& g, AgentId i, AgentId j) {
  if (i == j) throw_input("shortest path needs distinct endpoints");
  if (i < 1 || i > g.num_nodes() || j < 1 || j > g.num_nodes())
    throw_input("shortest path endpoint outside the graph");
  const auto dist = bfs(g, j);
  if (dist[static_cast<std::size_t>(i)] < 0)
    throw_input("no path from " + std::to_string(i) + " to " + std::to_string(j) +
                "; the communication graph must be connected");
  Path p{{i}};
  AgentId cur = i;
  while (cur != j) {
    // Neighbours come sorted, so the first one closer to j gives the
    // lexicographically smallest minimum-hop sequence.
    for (AgentId v : g.neighbors(cur)) {
      if (dist[static_cast<std::size_t>(v)] == dist[static_cast<std::size_t>(cur)] - 1) {
        cur = v;
        break;
      }
    }
    p.nodes.push_back(cur);
  }
  return p;
}

std::vector<Edge> edge_sequence(const std::vector<AgentId>& nodes) {
  std::vector<Edge> out;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) out.push_back({nodes[k], nodes[k + 1]});
  return out;
}

UndirectedGraph rewrite_task_graph(const UndirectedGraph& g_task, const UndirectedGraph& gc,
                                   const std::map<Edge, Path>& paths) {
  if (g_task.num_nodes() != gc.num_nodes()) throw_input("task and communication graphs differ in size");
  UndirectedGraph out = g_task;
  for (const auto& e : g_task.edges()) {
    if (gc.has_edge(e.from, e.to)) continue;
    if (!paths.count(e)) throw_input("no replacement path for task edge " + to_string(e));
    out.remove_edge(e.from, e.to);
  }
  for (const auto& [e, path] : paths) {
    if (!g_task.has_edge(e.from, e.to) || gc.has_edge(e.from, e.to))
      throw_input("replacement path given for " + to_string(e) + ", which needs none");
    const Edge ends = Edge{path.source(), path.target()}.canonical();
    if (ends != e) throw_input("path for " + to_string(e) + " has endpoints " + to_string(ends));
    validate(path, gc);
    for (const auto& step : edge_sequence(path)) out.add_edge(step.from, step.to);
  }
  return out;
}

std::vector<Cycle> enumerate_cycles(const UndirectedGraph& g, int max_len) {
  if (max_len < 3) throw_input("max cycle length must be at least 3");
  std::vector<Cycle> out;
  std::vector<AgentId> stack;
  std::vector<bool> on_stack(static_cast<std::size_t>(g.num_nodes() + 1), false);
  std::function<void(AgentId, AgentId)> extend = [&](AgentId start, AgentId u) {
    for (AgentId v : g.neighbors(u)) {
      if (v == start && stack.size() >= 3 && stack[1] < stack.back()) {
        Cycle c{stack};
        c.nodes.push_back(start);
        out.push_back(std::move(c));
      }
      if (v <= start || on_stack[static_cast<std::size_t>(v)]) continue;
      if (static_cast<int>(stack.size()) >= max_len) continue;
      stack.push_back(v);
      on_stack[static_cast<std::size_t>(v)] = true;
      extend(start, v);
      on_stack[static_cast<std::size_t>(v)] = false;
      stack.pop_back();
    }
  };
  for (AgentId s = 1; s <= g.num_nodes(); ++s) {
    stack = {s};
    on_stack[static_cast<std::size_t>(s)] = true;
    extend(s, s);
    on_stack[static_cast<std::size_t>(s)] = false;
  }
  return out;
}

}  // namespace stldecomp
