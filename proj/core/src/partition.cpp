#include "rmtcum/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rmtcum/bigint.hpp"

namespace rmtcum {

namespace {

// Plain union-find over dense indices.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<Label>> canonicalize(std::vector<std::vector<Label>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return blocks;
}

}  // namespace

GroundSet::GroundSet(std::vector<Label> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 1; i < elements_.size(); ++i) {
        if (elements_[i] == elements_[i - 1])
            throw DomainError("GroundSet: duplicate label " + std::to_string(elements_[i]));
    }
}

GroundSet GroundSet::range(int m) {
    std::vector<Label> e(m);
    std::iota(e.begin(), e.end(), 1);
    return GroundSet(std::move(e));
}

GroundSet GroundSet::signed_range(int m) {
    std::vector<Label> e;
    e.reserve(2 * m);
    for (int v = -m; v <= -1; ++v) e.push_back(v);
    for (int v = 1; v <= m; ++v) e.push_back(v);
    return GroundSet(std::move(e));
}

bool GroundSet::contains(Label v) const {
    return std::binary_search(elements_.begin(), elements_.end(), v);
}

int GroundSet::index_of(Label v) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), v);
    if (it == elements_.end() || *it != v)
        throw DomainError("GroundSet: label " + std::to_string(v) + " not in domain");
    return static_cast<int>(it - elements_.begin());
}

SetPartition::SetPartition(GroundSet domain, std::vector<std::vector<Label>> blocks)
    : domain_(std::move(domain)), blocks_(canonicalize(std::move(blocks))) {
    block_index_.assign(domain_.size(), -1);
    int covered = 0;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        if (blocks_[bi].empty()) throw ShapeError("SetPartition: empty block");
        for (Label v : blocks_[bi]) {
            int idx = domain_.index_of(v);
            if (block_index_[idx] != -1)
                throw ShapeError("SetPartition: label " + std::to_string(v) +
                                 " appears in two blocks");
            block_index_[idx] = static_cast<int>(bi);
            ++covered;
        }
    }
    if (covered != domain_.size())
        throw ShapeError("SetPartition: blocks do not cover the domain");
}

SetPartition SetPartition::singletons(const GroundSet& domain) {
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(domain.size());
    for (Label v : domain.elements()) blocks.push_back({v});
    return SetPartition(domain, std::move(blocks));
}

SetPartition SetPartition::one_block(const GroundSet& domain) {
    return SetPartition(domain, {domain.elements()});
}

int SetPartition::block_index_of(Label v) const { return block_index_[domain_.index_of(v)]; }

bool SetPartition::is_pairing() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const auto& b) { return b.size() == 2; });
}

bool SetPartition::all_blocks_even() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const auto& b) { return b.size() % 2 == 0; });
}

std::string SetPartition::canonical_string() const {
    std::ostringstream os;
    for (const auto& b : blocks_) {
        os << '{';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) os << ',';
            os << b[i];
        }
        os << '}';
    }
    return os.str();
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
    if (a.domain() != b.domain()) throw DomainError("join: partitions live on different domains");
    const auto& elems = a.domain().elements();
    UnionFind uf(static_cast<int>(elems.size()));
    for (const auto* p : {&a, &b}) {
        for (const auto& block : p->blocks()) {
            int head = a.domain().index_of(block.front());
            for (Label v : block) uf.unite(head, a.domain().index_of(v));
        }
    }
    std::unordered_map<int, std::vector<Label>> groups;
    for (std::size_t i = 0; i < elems.size(); ++i)
        groups[uf.find(static_cast<int>(i))].push_back(elems[i]);
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(groups.size());
    for (auto& [root, g] : groups) blocks.push_back(std::move(g));
    return SetPartition(a.domain(), std::move(blocks));
}

bool is_refinement(const SetPartition& a, const SetPartition& b) {
    if (a.domain() != b.domain())
        throw DomainError("is_refinement: partitions live on different domains");
    for (const auto& block : a.blocks()) {
        int target = b.block_index_of(block.front());
        for (Label v : block)
            if (b.block_index_of(v) != target) return false;
    }
    return true;
}

SetPartition kernel(const GroundSet& domain, const std::vector<Label>& values) {
    if (values.empty()) throw ShapeError("kernel: empty value list");
    if (static_cast<int>(values.size()) != domain.size())
        throw DomainError("kernel: value list length does not match domain size");
    std::map<Label, std::vector<Label>> groups;
    for (int i = 0; i < domain.size(); ++i)
        groups[values[i]].push_back(domain.elements()[i]);
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(groups.size());
    for (auto& [val, g] : groups) blocks.push_back(std::move(g));
    return SetPartition(domain, std::move(blocks));
}

void enumerate_partitions(const GroundSet& domain,
                          const std::function<void(const SetPartition&)>& visit, int guard) {
    int n = domain.size();
    if (n < 1) throw ShapeError("enumerate_partitions: empty domain");
    if (n > guard)
        throw SizeError("enumerate_partitions: domain size " + std::to_string(n) +
                        " exceeds guard " + std::to_string(guard) + " (Bell(" + std::to_string(n) +
                        ") = " + bell_number(n).str() + " partitions)");
    // Restricted growth strings: a[0]=0, a[i] <= 1 + max(a[0..i-1]).
    std::vector<int> a(n, 0);
    const auto& elems = domain.elements();
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == n) {
            std::vector<std::vector<Label>> blocks(maxv + 1);
            for (int k = 0; k < n; ++k) blocks[a[k]].push_back(elems[k]);
            visit(SetPartition(domain, std::move(blocks)));
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            a[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    a[0] = 0;
    rec(1, 0);
}

void enumerate_partitions(int n, const std::function<void(const SetPartition&)>& visit,
                          int guard) {
    enumerate_partitions(GroundSet::range(n), visit, guard);
}

namespace {

void pairings_rec(const std::vector<Label>& elems, std::vector<bool>& used,
                  std::vector<std::vector<Label>>& acc, const GroundSet& domain,
                  const std::function<void(const SetPartition&)>& visit) {
    std::size_t first = 0;
    while (first < elems.size() && used[first]) ++first;
    if (first == elems.size()) {
        visit(SetPartition(domain, acc));
        return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < elems.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        acc.push_back({elems[first], elems[j]});
        pairings_rec(elems, used, acc, domain, visit);
        acc.pop_back();
        used[j] = false;
    }
    used[first] = false;
}

}  // namespace

void enumerate_pairings(const GroundSet& domain,
                        const std::function<void(const SetPartition&)>& visit) {
    if (domain.size() % 2 != 0)
        throw ParityError("enumerate_pairings: domain size " + std::to_string(domain.size()) +
                          " is odd");
    if (domain.size() == 0) return;
    std::vector<bool> used(domain.size(), false);
    std::vector<std::vector<Label>> acc;
    pairings_rec(domain.elements(), used, acc, domain, visit);
}

void enumerate_even_partitions(int n, const std::function<void(const SetPartition&)>& visit,
                               int guard) {
    if (n % 2 != 0) throw ParityError("enumerate_even_partitions: n must be even");
    enumerate_partitions(n, [&](const SetPartition& p) {
        if (p.all_blocks_even()) visit(p);
    }, guard);
}

CyclicPartition::CyclicPartition(std::vector<int> m_vec) : m_vec_(std::move(m_vec)) {
    if (m_vec_.empty()) throw ShapeError("CyclicPartition: empty length list");
    for (int mk : m_vec_) {
        if (mk < 1) throw ShapeError("CyclicPartition: monomial length must be >= 1");
        m_ += mk;
    }
    std::vector<std::vector<Label>> blocks;
    next_.assign(m_ + 1, 0);
    prev_.assign(m_ + 1, 0);
    int start = 1;
    for (int mk : m_vec_) {
        std::vector<Label> block(mk);
        std::iota(block.begin(), block.end(), start);
        for (int l = start; l < start + mk; ++l) {
            next_[l] = (l + 1 < start + mk) ? l + 1 : start;
            prev_[l] = (l - 1 >= start) ? l - 1 : start + mk - 1;
        }
        blocks.push_back(std::move(block));
        start += mk;
    }
    partition_ = SetPartition(GroundSet::range(m_), std::move(blocks));
}

int CyclicPartition::next(int l) const {
    if (l < 1 || l > m_) throw DomainError("CyclicPartition::next: label out of range");
    return next_[l];
}

int CyclicPartition::prev(int l) const {
    if (l < 1 || l > m_) throw DomainError("CyclicPartition::prev: label out of range");
    return prev_[l];
}

SetPartition lift_pairing(const SetPartition& tau) {
    if (!tau.is_pairing()) throw ShapeError("lift_pairing: input is not a pairing");
    int m = tau.domain().size();
    if (tau.domain() != GroundSet::range(m))
        throw DomainError("lift_pairing: domain must be {1..m}");
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(2 * tau.block_count());
    for (const auto& b : tau.blocks()) {
        Label u = b[0], v = b[1];
        blocks.push_back({u, -v});
        blocks.push_back({v, -u});
    }
    return SetPartition(GroundSet::signed_range(m), std::move(blocks));
}

SetPartition lift_pairing_eps(const SetPartition& tau, const std::vector<Mark>& eps) {
    if (!tau.is_pairing()) throw ShapeError("lift_pairing_eps: input is not a pairing");
    int m = tau.domain().size();
    if (tau.domain() != GroundSet::range(m))
        throw DomainError("lift_pairing_eps: domain must be {1..m}");
    if (static_cast<int>(eps.size()) != m)
        throw ShapeError("lift_pairing_eps: mark list length " + std::to_string(eps.size()) +
                         " does not match m = " + std::to_string(m));
    std::vector<std::vector<Label>> blocks;
    blocks.reserve(2 * tau.block_count());
    for (const auto& b : tau.blocks()) {
        Label u = b[0], v = b[1];
        if (eps[u - 1] == eps[v - 1]) {
            blocks.push_back({u, -v});
            blocks.push_back({v, -u});
        } else {
            blocks.push_back({u, v});
            blocks.push_back({-u, -v});
        }
    }
    return SetPartition(GroundSet::signed_range(m), std::move(blocks));
}

namespace {

using Blocks = std::vector<std::vector<Label>>;

// Pair consecutive elements of each (sorted) block.
Blocks lex_pairing(const Blocks& tau) {
    Blocks out;
    for (const auto& b : tau)
        for (std::size_t i = 0; i + 1 < b.size(); i += 2) out.push_back({b[i], b[i + 1]});
    return out;
}

// Component index of every element under the join of the two block families.
std::unordered_map<Label, int> component_map(const Blocks& tau, const Blocks& gamma) {
    std::unordered_map<Label, int> pos;
    for (const auto& g : gamma)
        for (Label v : g) pos.emplace(v, static_cast<int>(pos.size()));
    UnionFind uf(static_cast<int>(pos.size()));
    for (const auto* fam : {&tau, &gamma}) {
        for (const auto& b : *fam)
            for (std::size_t i = 1; i < b.size(); ++i) uf.unite(pos.at(b[0]), pos.at(b[i]));
    }
    std::unordered_map<int, int> relabel;
    std::unordered_map<Label, int> comp;
    for (const auto& [v, p] : pos) {
        int root = uf.find(p);
        auto [it, fresh] = relabel.try_emplace(root, static_cast<int>(relabel.size()));
        comp[v] = it->second;
    }
    return comp;
}

int component_count(const std::unordered_map<Label, int>& comp) {
    int mx = -1;
    for (const auto& [v, c] : comp) mx = std::max(mx, c);
    return mx + 1;
}

// Recursion from the existence proof.  Preconditions: every tau block has
// even size and the join of tau with gamma is connected.  Returns a pairing
// refining tau whose join with gamma has at most ceil(#gamma / 2) blocks.
Blocks solve(Blocks tau, Blocks gamma) {
    std::size_t r = gamma.size();
    if (r == 1) return lex_pairing(tau);
    if (r == 2) {
        // Some block of tau meets both gamma blocks; pair its smallest
        // element with the smallest element on the other side, which keeps
        // the join connected.  Everything else pairs lexicographically.
        std::unordered_map<Label, int> side;
        for (int g = 0; g < 2; ++g)
            for (Label v : gamma[g]) side[v] = g;
        for (std::size_t bi = 0; bi < tau.size(); ++bi) {
            const auto& b = tau[bi];
            Label u = b[0];
            auto other = std::find_if(b.begin(), b.end(),
                                      [&](Label w) { return side.at(w) != side.at(u); });
            if (other == b.end()) continue;
            Label v = *other;
            Blocks out{{std::min(u, v), std::max(u, v)}};
            std::vector<Label> rest;
            for (Label w : b)
                if (w != u && w != v) rest.push_back(w);
            for (std::size_t i = 0; i + 1 < rest.size(); i += 2)
                out.push_back({rest[i], rest[i + 1]});
            for (std::size_t bj = 0; bj < tau.size(); ++bj) {
                if (bj == bi) continue;
                for (std::size_t i = 0; i + 1 < tau[bj].size(); i += 2)
                    out.push_back({tau[bj][i], tau[bj][i + 1]});
            }
            return out;
        }
        throw ContractError("find_crossing_pairing: join with gamma is not connected");
    }
    // r >= 3: peel pairs off oversized blocks until either tau becomes a
    // pairing (done) or the peel disconnects the join into two components.
    while (true) {
        auto big = std::find_if(tau.begin(), tau.end(),
                                [](const auto& b) { return b.size() >= 4; });
        if (big == tau.end()) return tau;  // tau is already a pairing
        Label u = (*big)[0], v = (*big)[1];
        std::vector<Label> rest(big->begin() + 2, big->end());
        Blocks tau2 = tau;
        tau2[big - tau.begin()] = {u, v};
        tau2.push_back(rest);
        auto comp = component_map(tau2, gamma);
        if (component_count(comp) == 1) {
            tau = std::move(tau2);
            continue;
        }
        // Two components: C holds {u,v}, D holds the remainder of the block.
        auto pick = [&](const Blocks& fam, int c) {
            Blocks out;
            for (const auto& b : fam)
                if (comp.at(b[0]) == c) out.push_back(b);
            return out;
        };
        int cu = comp.at(u), cd = comp.at(rest[0]);
        Blocks tau_C = pick(tau2, cu), gamma_C = pick(gamma, cu);
        Blocks tau_D = pick(tau2, cd), gamma_D = pick(gamma, cd);
        if (gamma_C.size() > 1 && gamma_D.size() > 1) {
            Blocks sigma = solve(std::move(tau_C), std::move(gamma_C));
            Blocks sd = solve(std::move(tau_D), std::move(gamma_D));
            sigma.insert(sigma.end(), sd.begin(), sd.end());
            return sigma;
        }
        // One side consists of a single gamma block.  Pair that side
        // lexicographically, recurse on the other, then cross-swap {u,v}
        // against the smallest pair {a,b} inside the peeled remainder to
        // rejoin the components without adding one.
        Blocks sigma_C = gamma_C.size() == 1 ? lex_pairing(tau_C)
                                             : solve(std::move(tau_C), std::move(gamma_C));
        Blocks sigma_D = gamma_D.size() == 1 ? lex_pairing(tau_D)
                                             : solve(std::move(tau_D), std::move(gamma_D));
        auto uv_it = std::find_if(sigma_C.begin(), sigma_C.end(), [&](const auto& b) {
            return (b[0] == u && b[1] == v) || (b[0] == v && b[1] == u);
        });
        std::vector<Label> rest_sorted = rest;
        std::sort(rest_sorted.begin(), rest_sorted.end());
        auto in_rest = [&](Label w) {
            return std::binary_search(rest_sorted.begin(), rest_sorted.end(), w);
        };
        auto ab_it = sigma_D.end();
        for (auto it = sigma_D.begin(); it != sigma_D.end(); ++it) {
            if (!in_rest((*it)[0]) || !in_rest((*it)[1])) continue;
            if (ab_it == sigma_D.end() || *it < *ab_it) ab_it = it;
        }
        if (uv_it == sigma_C.end() || ab_it == sigma_D.end())
            throw ContractError("find_crossing_pairing: internal: peel bookkeeping failed");
        Label a = (*ab_it)[0], b = (*ab_it)[1];
        *uv_it = {std::min(u, a), std::max(u, a)};
        *ab_it = {std::min(v, b), std::max(v, b)};
        sigma_C.insert(sigma_C.end(), sigma_D.begin(), sigma_D.end());
        return sigma_C;
    }
}

}  // namespace

SetPartition find_crossing_pairing(const SetPartition& tau, const SetPartition& gamma) {
    if (tau.domain() != gamma.domain())
        throw DomainError("find_crossing_pairing: partitions live on different domains");
    if (!tau.all_blocks_even())
        throw ContractError("find_crossing_pairing: tau has a block of odd size");
    if (gamma.block_count() < 2)
        throw ContractError("find_crossing_pairing: gamma must have at least 2 blocks");
    if (join(tau, gamma).block_count() != 1)
        throw ContractError("find_crossing_pairing: join of tau and gamma is not the full set");
    Blocks sigma = solve(tau.blocks(), gamma.blocks());
    return SetPartition(tau.domain(), std::move(sigma));
}

}  // namespace rmtcum
