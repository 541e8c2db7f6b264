// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "xxzgap/errors.hpp"

namespace xxzgap {

namespace {

std::string edge_str(const Edge& e) {
  return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
}

}  // namespace

bool is_connected(int n_vertices, const std::vector<Edge>& edges) {
  if (n_vertices <= 1) return true;
  std::vector<int> parent(static_cast<std::size_t>(n_vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  int components = n_vertices;
  for (const auto& [u, v] : edges) {
    const int ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

BaseGraph::BaseGraph(int n_vertices, std::vector<Edge> edges, std::string name,
                     std::vector<StripLabel> labels)
    : n_(n_vertices), edges_(std::move(edges)), name_(std::move(name)), labels_(std::move(labels)) {
  if (n_ < 1) throw InvalidSize("graph needs at least one vertex");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_) {
    throw InvalidSize("label count does not match vertex count");
  }
  for (auto& e : edges_) {
    if (e.first < 0 || e.second < 0 || e.first >= n_ || e.second >= n_) {
      throw InvalidGraph("edge " + edge_str(e) + " references a vertex outside [0, " +
                         std::to_string(n_) + ")");
    }
    if (e.first == e.second) throw InvalidGraph("self-loop at vertex " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InvalidGraph("duplicate edge " + edge_str(*dup));
  }
  if (!is_connected(n_, edges_)) throw DisconnectedGraph("graph is not connected");

  degrees_.assign(static_cast<std::size_t>(n_), 0);
  for (const auto& [u, v] : edges_) {
    ++degrees_[u];
    ++degrees_[v];
  }
  if (name_.empty()) name_ = "edges(" + std::to_string(n_) + ")";
}

BaseGraph BaseGraph::path(int n) {
  if (n < 2) throw InvalidSize("path needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return BaseGraph(n, std::move(edges), "path(" + std::to_string(n) + ")");
}

BaseGraph BaseGraph::cycle(int n) {
  if (n < 3) throw InvalidSize("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return BaseGraph(n, std::move(edges), "cycle(" + std::to_string(n) + ")");
}

BaseGraph BaseGraph::strip(int n, int L, bool periodic) {
  if (n < 2 || L < 2) throw InvalidSize("strip needs n >= 2 and L >= 2");
  if (periodic && n < 3) throw InvalidSize("periodic strip needs n >= 3");
  auto id = [L](int z, int l) { return z * L + l; };
  std::vector<Edge> edges;
  std::vector<StripLabel> labels;
  for (int z = 0; z < n; ++z) {
    for (int l = 0; l < L; ++l) {
      labels.push_back({z, l});
      if (l + 1 < L) edges.emplace_back(id(z, l), id(z, l + 1));
      if (z + 1 < n) {
        edges.emplace_back(id(z, l), id(z + 1, l));
      } else if (periodic) {
        edges.emplace_back(id(z, l), id(0, l));
      }
    }
  }
  std::string name = (periodic ? "cylinder(" : "strip(") + std::to_string(n) + "," +
                     std::to_string(L) + ")";
  return BaseGraph(n * L, std::move(edges), std::move(name), std::move(labels));
}

BaseGraph BaseGraph::from_edge_list(const std::vector<Edge>& pairs, std::optional<int> n_vertices) {
  int n = 0;
  for (const auto& [u, v] : pairs) n = std::max({n, u + 1, v + 1});
  if (n_vertices) {
    if (*n_vertices < n) throw InvalidGraph("edge list references ids beyond the vertex count");
    n = *n_vertices;
  }
  if (n == 0) throw InvalidSize("empty edge list");
  return BaseGraph(n, pairs);
}

int BaseGraph::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

std::string BaseGraph::to_edge_list_text() const {
  std::string out;
  for (const auto& [u, v] : edges_) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::vector<Edge> parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long u = 0, v = 0;
    if (!(fields >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    }
    std::string rest;
    if (!(fields >> v) || (fields >> rest) || u < 0 || v < 0 || u > 1'000'000'000 ||
        v > 1'000'000'000) {
      throw ParseError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return edges;
}

BaseGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path + "'");
  auto edges = parse_edge_list(in);
  BaseGraph g = BaseGraph::from_edge_list(edges);
  return BaseGraph(g.n_vertices(), g.edges(), "file(" + path + ")");
}

}  // namespace xxzgap
