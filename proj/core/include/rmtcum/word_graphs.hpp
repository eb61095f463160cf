#pragma once

#include <vector>

#include "rmtcum/multigraph.hpp"
#include "rmtcum/partition.hpp"

namespace rmtcum {

/// The two graphs attached to a product of r trace monomials with lengths
/// m_vec.  Both live on the signed vertex set {-m..-1, 1..m}.
///
///  - D is oriented with edges e_k = (gamma(k), -k), id k; its edges carry
///    the deterministic matrices.
///  - G adds the unoriented edges e_k^X = {k, -k} (id m+k) to the edges of D
///    (kept with id k); G is a disjoint union of r cycles, one per monomial.
struct WordGraphs {
    CyclicPartition gamma;
    MultiGraph D;
    MultiGraph G;
};

WordGraphs build_word_graphs(const std::vector<int>& m_vec);

/// A graph whose vertices are themselves graphs: members with disjoint
/// vertex sets, plus edges that attach a vertex of one member to a vertex of
/// another (or the same) member.
struct GraphOfGraphs {
    struct TEdge {
        int member_a;
        int member_b;
        Label vertex_a;  // in members[member_a]
        Label vertex_b;  // in members[member_b]
    };
    std::vector<MultiGraph> members;
    std::vector<TEdge> t_edges;
};

struct MergedGraph {
    MultiGraph graph;     // quotient of the disjoint union by pi_T
    SetPartition pi_T;    // generated by the attachment pairs
};

/// Builds the quotient of the disjoint union of the members by the partition
/// generated by the attachment pairs.
MergedGraph merge_by_graph(const GraphOfGraphs& gog);

}  // namespace rmtcum
