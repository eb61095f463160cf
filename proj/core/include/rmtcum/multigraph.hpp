#pragma once

#include <string>
#include <vector>

#include "rmtcum/half_integer.hpp"
#include "rmtcum/partition.hpp"

namespace rmtcum {

/// One edge of a multigraph.  For oriented graphs the edge runs a -> b.
struct Edge {
    int id;
    Label a;
    Label b;
    bool operator==(const Edge&) const = default;
};

/// Finite multigraph with integer vertex labels.  Parallel edges and loops
/// are permitted and counted with multiplicity; edge ids are unique and are
/// preserved through quotients.  Orientation is a graph-level mode.
class MultiGraph {
  public:
    MultiGraph() = default;
    MultiGraph(std::vector<Label> vertices, std::vector<Edge> edges, bool oriented = false);

    const std::vector<Label>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool oriented() const { return oriented_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_vertex(Label v) const;
    /// Loops contribute 2 to the degree of their vertex.
    int degree(Label v) const;
    GroundSet vertex_set() const { return GroundSet(vertices_); }

  private:
    std::vector<Label> vertices_;  // sorted, distinct
    std::vector<Edge> edges_;
    bool oriented_ = false;
};

/// Identifies vertices within each block of pi; each block is relabeled by
/// its minimum element.  Edge ids and multiplicity are preserved; an edge
/// inside one block becomes a loop.
MultiGraph quotient(const MultiGraph& g, const SetPartition& pi);

/// Edge ids of the cutting edges, ignoring orientation.  A loop is never a
/// bridge and a parallel pair is never a bridge.
std::vector<int> bridges(const MultiGraph& g);

/// Partition of the vertices into two-edge-connected components, i.e. the
/// connected components left after deleting all bridges.
SetPartition two_edge_cc(const MultiGraph& g);

/// The forest on two-edge-connected components (each labeled by its minimum
/// vertex) with one edge per bridge.  Throws ContractError if the result is
/// not acyclic, which would indicate a bridge-finder bug.
MultiGraph forest_2ecc(const MultiGraph& g);

/// Sum over the leaves of the forest of g: isolated forest vertices weigh 1,
/// degree-1 forest vertices weigh 1/2, everything else weighs 0.
HalfInteger t_exponent(const MultiGraph& g);

/// Number of connected components of a 2-regular graph (loops count 2
/// towards the degree).  Throws ShapeError on any other degree.
int cycle_count(const MultiGraph& g);

/// Line format: first line lists the vertices; each further nonempty line is
/// "id a b" or "id a b oriented".
MultiGraph parse_multigraph(const std::string& text);
std::string format_multigraph(const MultiGraph& g);

}  // namespace rmtcum
