#include "rmtcum/spi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace rmtcum {

namespace {

// Dense tensor over a sorted list of variable ids, each of range N.
// Row-major with vars[0] slowest.
struct Factor {
    std::vector<int> vars;
    std::vector<Complex> data;
};

std::size_t checked_size(const std::vector<int>& vars, int n, std::size_t budget) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        s *= static_cast<std::size_t>(n);
        if (s > budget)
            throw SizeError("DeterministicSum: intermediate tensor exceeds budget; lower N or "
                            "use a coarser partition");
    }
    return s;
}

// Multiplies a list of factors into one over the union of their variables.
Factor multiply(const std::vector<Factor>& fs, int n, std::size_t budget) {
    std::set<int> var_set;
    for (const Factor& f : fs) var_set.insert(f.vars.begin(), f.vars.end());
    Factor out;
    out.vars.assign(var_set.begin(), var_set.end());
    std::size_t total = checked_size(out.vars, n, budget);
    out.data.assign(total, Complex(1.0, 0.0));
    std::vector<int> pos(out.vars.size(), 0);
    // Per input factor, precompute the positions of its vars in out.vars.
    std::vector<std::vector<int>> maps(fs.size());
    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
        for (int v : fs[fi].vars) {
            auto it = std::lower_bound(out.vars.begin(), out.vars.end(), v);
            maps[fi].push_back(static_cast<int>(it - out.vars.begin()));
        }
    }
    std::vector<int> assign(out.vars.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        // decode flat -> assignment
        std::size_t rem = flat;
        for (std::size_t k = out.vars.size(); k-- > 0;) {
            assign[k] = static_cast<int>(rem % n);
            rem /= n;
        }
        Complex prod(1.0, 0.0);
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            std::size_t idx = 0;
            for (std::size_t k = 0; k < fs[fi].vars.size(); ++k)
                idx = idx * n + static_cast<std::size_t>(assign[maps[fi][k]]);
            prod *= fs[fi].data[idx];
        }
        out.data[flat] = prod;
    }
    return out;
}

// Sums out one variable of a factor.
Factor sum_out(const Factor& f, int var, int n) {
    auto it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
    std::size_t axis = static_cast<std::size_t>(it - f.vars.begin());
    Factor out;
    out.vars = f.vars;
    out.vars.erase(out.vars.begin() + axis);
    std::size_t outer = 1, inner = 1;
    for (std::size_t k = 0; k < axis; ++k) outer *= n;
    for (std::size_t k = axis + 1; k < f.vars.size(); ++k) inner *= n;
    out.data.assign(outer * inner, Complex(0.0, 0.0));
    for (std::size_t o = 0; o < outer; ++o) {
        for (int a = 0; a < n; ++a) {
            const Complex* src = f.data.data() + (o * n + a) * inner;
            Complex* dst = out.data.data() + o * inner;
            for (std::size_t i = 0; i < inner; ++i) dst[i] += src[i];
        }
    }
    return out;
}

}  // namespace

DeterministicSum::DeterministicSum(const DeterministicSet& detset,
                                   std::vector<std::string> d_names, CyclicPartition gamma,
                                   SpiOptions opts)
    : detset_(&detset), d_names_(std::move(d_names)), gamma_(std::move(gamma)), opts_(opts) {
    if (static_cast<int>(d_names_.size()) != gamma_.total())
        throw ShapeError("DeterministicSum: need one matrix name per word position");
    norm_product_ = 1.0;
    for (const auto& name : d_names_) norm_product_ *= detset_->norm(name);
    int m = gamma_.total();
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int l = 1; l <= m; ++l) edges.push_back({l, gamma_.next(l), -l});
    d_graph_ = MultiGraph(GroundSet::signed_range(m).elements(), std::move(edges), true);
}

Complex DeterministicSum::s_geq(const SetPartition& pi) const {
    std::string key = pi.canonical_string();
    auto it = geq_cache_.find(key);
    if (it != geq_cache_.end()) return it->second;
    Complex v = s_geq_uncached(pi);
    geq_cache_.emplace(std::move(key), v);
    return v;
}

Complex DeterministicSum::s_geq_uncached(const SetPartition& pi) const {
    if (pi.domain() != GroundSet::signed_range(gamma_.total()))
        throw DomainError("DeterministicSum: partition must live on the signed word positions");
    int n = detset_->dimension();
    int nblocks = pi.block_count();
    // One tensor variable per block of pi; factor l is the matrix at word
    // position l evaluated at (block of -l, block of gamma(l)).
    std::vector<Factor> factors;
    factors.reserve(gamma_.total());
    std::vector<bool> touched(nblocks, false);
    for (int l = 1; l <= gamma_.total(); ++l) {
        const Matrix& d = detset_->get(d_names_[l - 1]);
        int row_var = pi.block_index_of(-l);
        int col_var = pi.block_index_of(gamma_.next(l));
        touched[row_var] = touched[col_var] = true;
        Factor f;
        if (row_var == col_var) {
            f.vars = {row_var};
            f.data.resize(n);
            for (int a = 0; a < n; ++a) f.data[a] = d(a, a);
        } else {
            f.vars = {std::min(row_var, col_var), std::max(row_var, col_var)};
            f.data.resize(static_cast<std::size_t>(n) * n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Complex v = (row_var < col_var) ? d(a, b) : d(b, a);
                    f.data[static_cast<std::size_t>(a) * n + b] = v;
                }
        }
        factors.push_back(std::move(f));
    }
    // Variables appearing in no factor range freely.
    int free_vars = static_cast<int>(std::count(touched.begin(), touched.end(), false));
    // Greedy elimination: repeatedly sum out the variable whose merged
    // tensor is smallest.
    std::set<int> alive;
    for (int b = 0; b < nblocks; ++b)
        if (touched[b]) alive.insert(b);
    while (!alive.empty()) {
        int best = -1;
        std::size_t best_size = std::numeric_limits<std::size_t>::max();
        for (int v : alive) {
            std::set<int> merged;
            for (const Factor& f : factors)
                if (std::binary_search(f.vars.begin(), f.vars.end(), v))
                    merged.insert(f.vars.begin(), f.vars.end());
            std::size_t s = 1;
            for (std::size_t k = 0; k < merged.size(); ++k) {
                s *= static_cast<std::size_t>(n);
                if (s >= best_size) break;
            }
            if (s < best_size) {
                best_size = s;
                best = v;
            }
        }
        std::vector<Factor> involved, rest;
        for (Factor& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), best))
                involved.push_back(std::move(f));
            else
                rest.push_back(std::move(f));
        }
        Factor merged = multiply(involved, n, opts_.tensor_budget);
        rest.push_back(sum_out(merged, best, n));
        factors = std::move(rest);
        alive.erase(best);
    }
    Complex result(1.0, 0.0);
    for (const Factor& f : factors) result *= f.data.at(0);
    result *= std::pow(static_cast<double>(n), free_vars);
    if (opts_.audit) {
        HalfInteger t = t_exponent(quotient(d_graph_, pi));
        double bound = std::pow(static_cast<double>(n), t.as_double()) * norm_product_;
        if (std::abs(result) > bound * (1.0 + 1e-9))
            throw ContractError("DeterministicSum: |S_pi| = " + std::to_string(std::abs(result)) +
                                " exceeds its graph bound " + std::to_string(bound));
    }
    return result;
}

Complex DeterministicSum::s_eq(const SetPartition& pi) const {
    std::string key = pi.canonical_string();
    auto it = eq_cache_.find(key);
    if (it != eq_cache_.end()) return it->second;
    // Inclusion-exclusion over partitions of the blocks of pi: merging
    // blocks per rho coarsens pi, weighted by prod (-1)^(|B|-1) (|B|-1)!.
    int nb = pi.block_count();
    Complex total(0.0, 0.0);
    enumerate_partitions(nb, [&](const SetPartition& rho) {
        double coeff = 1.0;
        std::vector<std::vector<Label>> merged_blocks;
        merged_blocks.reserve(rho.block_count());
        for (const auto& rb : rho.blocks()) {
            std::vector<Label> merged;
            for (Label bi : rb) {
                const auto& src = pi.blocks()[bi - 1];
                merged.insert(merged.end(), src.begin(), src.end());
            }
            merged_blocks.push_back(std::move(merged));
            int sz = static_cast<int>(rb.size());
            double f = (sz % 2 == 0) ? -1.0 : 1.0;
            for (int k = 2; k < sz; ++k) f *= k;
            coeff *= f;
        }
        SetPartition coarser(pi.domain(), std::move(merged_blocks));
        total += coeff * s_geq(coarser);
    }, std::max(nb, kDefaultPartitionGuard));
    eq_cache_.emplace(std::move(key), total);
    return total;
}

}  // namespace rmtcum
