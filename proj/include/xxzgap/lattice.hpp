// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xxzgap {

using Edge = std::pair<int, int>;

/// Finite, connected, simple base graph G = (V, E).
///
/// Edges are stored canonically as (min, max) pairs in sorted order, so two
/// construction routes for the same graph compare (and serialize) equal.
class BaseGraph {
 public:
  /// Coordinates (z, l) of a strip site; z runs along the long direction.
  struct StripLabel {
    int z;
    int l;
    bool operator==(const StripLabel&) const = default;
  };

  /// Validates and canonicalizes. Throws InvalidGraph on self-loops,
  /// duplicates or out-of-range ids, DisconnectedGraph if not connected.
  BaseGraph(int n_vertices, std::vector<Edge> edges, std::string name = {},
            std::vector<StripLabel> labels = {});

  static BaseGraph path(int n);
  static BaseGraph cycle(int n);
  /// n columns along z, L rows. periodic closes the z direction (cylinder).
  static BaseGraph strip(int n, int L, bool periodic);
  static BaseGraph cylinder(int n, int L) { return strip(n, L, true); }
  /// Vertex count is max id + 1 unless given explicitly.
  static BaseGraph from_edge_list(const std::vector<Edge>& pairs,
                                  std::optional<int> n_vertices = std::nullopt);

  int n_vertices() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<StripLabel>& labels() const noexcept { return labels_; }
  const std::string& name() const noexcept { return name_; }

  int degree(int v) const { return degrees_.at(static_cast<std::size_t>(v)); }
  int max_degree() const noexcept;

  /// One "u v" line per edge.
  std::string to_edge_list_text() const;

  bool operator==(const BaseGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::string name_;
  std::vector<StripLabel> labels_;
};

bool is_connected(int n_vertices, const std::vector<Edge>& edges);
inline bool is_connected(const BaseGraph& g) { return is_connected(g.n_vertices(), g.edges()); }
inline int max_degree(const BaseGraph& g) { return g.max_degree(); }

/// Parses the edge-list text format: one "u v" pair per line, 0-based ids,
/// '#' starts a comment, blank lines ignored.
std::vector<Edge> parse_edge_list(std::istream& in);
BaseGraph read_edge_list_file(const std::string& path);

}  // namespace xxzgap
