#include "rmtcum/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rmtcum {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // Returns false when both were already in one set.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

std::unordered_map<Label, int> index_map(const std::vector<Label>& vertices) {
    std::unordered_map<Label, int> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i) idx[vertices[i]] = static_cast<int>(i);
    return idx;
}

}  // namespace

MultiGraph::MultiGraph(std::vector<Label> vertices, std::vector<Edge> edges, bool oriented)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), oriented_(oriented) {
    std::sort(vertices_.begin(), vertices_.end());
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i] == vertices_[i - 1])
            throw ShapeError("MultiGraph: duplicate vertex " + std::to_string(vertices_[i]));
    }
    std::set<int> ids;
    for (const Edge& e : edges_) {
        if (!has_vertex(e.a) || !has_vertex(e.b))
            throw DomainError("MultiGraph: edge " + std::to_string(e.id) +
                              " references a missing vertex");
        if (!ids.insert(e.id).second)
            throw ShapeError("MultiGraph: duplicate edge id " + std::to_string(e.id));
    }
}

bool MultiGraph::has_vertex(Label v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int MultiGraph::degree(Label v) const {
    if (!has_vertex(v)) throw DomainError("MultiGraph::degree: unknown vertex");
    int d = 0;
    for (const Edge& e : edges_) {
        if (e.a == v) ++d;
        if (e.b == v) ++d;
    }
    return d;
}

MultiGraph quotient(const MultiGraph& g, const SetPartition& pi) {
    if (pi.domain() != g.vertex_set())
        throw DomainError("quotient: partition domain differs from the vertex set");
    std::vector<Label> vertices;
    vertices.reserve(pi.block_count());
    for (const auto& block : pi.blocks()) vertices.push_back(block.front());
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        Label a = pi.block_of(e.a).front();
        Label b = pi.block_of(e.b).front();
        edges.push_back({e.id, a, b});
    }
    return MultiGraph(std::move(vertices), std::move(edges), g.oriented());
}

std::vector<int> bridges(const MultiGraph& g) {
    int n = g.vertex_count();
    auto idx = index_map(g.vertices());
    // adjacency: (neighbor index, edge id)
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const Edge& e : g.edges()) {
        int a = idx.at(e.a), b = idx.at(e.b);
        if (a == b) continue;  // loops are never bridges
        adj[a].push_back({b, e.id});
        adj[b].push_back({a, e.id});
    }
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> out;
    int timer = 0;
    // Iterative depth-first search; skips only the entering edge by id, so a
    // parallel copy still cancels bridge status.
    struct Frame {
        int v;
        int parent_edge;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.v].size()) {
                auto [to, eid] = adj[f.v][f.next++];
                if (eid == f.parent_edge) continue;
                if (disc[to] == -1) {
                    disc[to] = low[to] = timer++;
                    stack.push_back({to, eid, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[to]);
                }
            } else {
                int v = f.v;
                int pe = f.parent_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) out.push_back(pe);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SetPartition two_edge_cc(const MultiGraph& g) {
    auto idx = index_map(g.vertices());
    std::vector<int> cut = bridges(g);
    UnionFind uf(g.vertex_count());
    for (const Edge& e : g.edges()) {
        if (std::binary_search(cut.begin(), cut.end(), e.id)) continue;
        uf.unite(idx.at(e.a), idx.at(e.b));
    }
    std::unordered_map<int, std::vector<Label>> groups;
    for (Label v : g.vertices()) groups[uf.find(idx.at(v))].push_back(v);
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(groups.size());
    for (auto& [root, block] : groups) blocks.push_back(std::move(block));
    return SetPartition(g.vertex_set(), std::move(blocks));
}

MultiGraph forest_2ecc(const MultiGraph& g) {
    SetPartition comps = two_edge_cc(g);
    std::vector<int> cut = bridges(g);
    std::vector<Label> vertices;
    vertices.reserve(comps.block_count());
    for (const auto& block : comps.blocks()) vertices.push_back(block.front());
    std::vector<Edge> edges;
    UnionFind uf(comps.block_count());
    for (const Edge& e : g.edges()) {
        if (!std::binary_search(cut.begin(), cut.end(), e.id)) continue;
        int ba = comps.block_index_of(e.a);
        int bb = comps.block_index_of(e.b);
        if (!uf.unite(ba, bb))
            throw ContractError("forest_2ecc: bridge set closes a cycle (bridge-finder bug)");
        edges.push_back({e.id, comps.blocks()[ba].front(), comps.blocks()[bb].front()});
    }
    return MultiGraph(std::move(vertices), std::move(edges), false);
}

HalfInteger t_exponent(const MultiGraph& g) {
    MultiGraph f = forest_2ecc(g);
    HalfInteger t;
    for (Label v : f.vertices()) {
        int d = f.degree(v);
        if (d == 0)
            t += HalfInteger::whole(1);
        else if (d == 1)
            t += HalfInteger::halves(1);
    }
    return t;
}

int cycle_count(const MultiGraph& g) {
    auto idx = index_map(g.vertices());
    std::vector<int> deg(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        ++deg[idx.at(e.a)];
        ++deg[idx.at(e.b)];
    }
    for (int i = 0; i < g.vertex_count(); ++i) {
        if (deg[i] != 2)
            throw ShapeError("cycle_count: vertex " + std::to_string(g.vertices()[i]) +
                             " has degree " + std::to_string(deg[i]) + ", expected 2");
    }
    UnionFind uf(g.vertex_count());
    int components = g.vertex_count();
    for (const Edge& e : g.edges())
        if (uf.unite(idx.at(e.a), idx.at(e.b))) --components;
    return components;
}

MultiGraph parse_multigraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Label> vertices;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Label v;
        while (ls >> v) vertices.push_back(v);
        if (!vertices.empty()) break;
    }
    if (vertices.empty()) throw ShapeError("parse_multigraph: missing vertex line");
    std::vector<Edge> edges;
    bool oriented = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int id;
        Label a, b;
        if (!(ls >> id >> a >> b)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ShapeError("parse_multigraph: malformed edge line: " + line);
        }
        std::string flag;
        if (ls >> flag) {
            if (flag != "oriented")
                throw ShapeError("parse_multigraph: unknown edge flag: " + flag);
            oriented = true;
        }
        edges.push_back({id, a, b});
    }
    return MultiGraph(std::move(vertices), std::move(edges), oriented);
}

std::string format_multigraph(const MultiGraph& g) {
    std::ostringstream out;
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        if (i) out << ' ';
        out << g.vertices()[i];
    }
    out << '\n';
    for (const Edge& e : g.edges()) {
        out << e.id << ' ' << e.a << ' ' << e.b;
        if (g.oriented()) out << " oriented";
        out << '\n';
    }
    return out.str();
}

}  // namespace rmtcum
