#include "rmtcum/word_graphs.hpp"

#include <numeric>
#include <unordered_map>

namespace rmtcum {

WordGraphs build_word_graphs(const std::vector<int>& m_vec) {
    CyclicPartition gamma(m_vec);
    int m = gamma.total();
    std::vector<Label> vertices = GroundSet::signed_range(m).elements();
    std::vector<Edge> d_edges;
    d_edges.reserve(m);
    for (int k = 1; k <= m; ++k) d_edges.push_back({k, gamma.next(k), -k});
    MultiGraph D(vertices, d_edges, true);
    std::vector<Edge> g_edges = d_edges;
    for (int k = 1; k <= m; ++k) g_edges.push_back({m + k, k, -k});
    MultiGraph G(std::move(vertices), std::move(g_edges), false);
    return WordGraphs{std::move(gamma), std::move(D), std::move(G)};
}

MergedGraph merge_by_graph(const GraphOfGraphs& gog) {
    std::vector<Label> vertices;
    std::vector<Edge> edges;
    bool oriented = !gog.members.empty() && gog.members.front().oriented();
    for (const MultiGraph& g : gog.members) {
        vertices.insert(vertices.end(), g.vertices().begin(), g.vertices().end());
        edges.insert(edges.end(), g.edges().begin(), g.edges().end());
    }
    // The MultiGraph constructor rejects duplicate vertices and edge ids, so
    // disjointness of the members is enforced here.
    MultiGraph unioned(vertices, std::move(edges), oriented);
    std::unordered_map<Label, int> idx;
    for (std::size_t i = 0; i < unioned.vertices().size(); ++i)
        idx[unioned.vertices()[i]] = static_cast<int>(i);
    std::vector<int> parent(unioned.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto member_vertex_index = [&](int member, Label v) {
        if (member < 0 || member >= static_cast<int>(gog.members.size()))
            throw DomainError("merge_by_graph: member index out of range");
        if (!gog.members[member].has_vertex(v))
            throw DomainError("merge_by_graph: attachment vertex " + std::to_string(v) +
                              " is not in member " + std::to_string(member));
        return idx.at(v);
    };
    for (const auto& e : gog.t_edges) {
        int a = member_vertex_index(e.member_a, e.vertex_a);
        int b = member_vertex_index(e.member_b, e.vertex_b);
        parent[find(a)] = find(b);
    }
    std::unordered_map<int, std::vector<Label>> groups;
    for (Label v : unioned.vertices()) groups[find(idx.at(v))].push_back(v);
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(groups.size());
    for (auto& [root, block] : groups) blocks.push_back(std::move(block));
    SetPartition pi_T(unioned.vertex_set(), std::move(blocks));
    MultiGraph merged = quotient(unioned, pi_T);
    return MergedGraph{std::move(merged), std::move(pi_T)};
}

}  // namespace rmtcum
