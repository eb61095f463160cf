#include "rmtcum/moment_cumulant.hpp"

#include <string>

#include "rmtcum/partition.hpp"

namespace rmtcum {

MomentCumulantTable MomentCumulantTable::real_table(std::vector<Complex> values_by_order) {
    MomentCumulantTable t;
    t.mode_ = Mode::real;
    t.order_ = static_cast<int>(values_by_order.size());
    for (int k = 1; k <= t.order_; ++k) t.values_[{k, 0}] = values_by_order[k - 1];
    return t;
}

MomentCumulantTable MomentCumulantTable::complex_table(
    int order, std::map<std::pair<int, int>, Complex> values) {
    MomentCumulantTable t;
    t.mode_ = Mode::complex_mode;
    t.order_ = order;
    for (int k = 1; k <= order; ++k) {
        for (int c = 0; c <= k; ++c) {
            if (!values.count({k, c}))
                throw CompletenessError("MomentCumulantTable: missing entry at order " +
                                        std::to_string(k) + ", conjugation count " +
                                        std::to_string(c));
        }
    }
    t.values_ = std::move(values);
    return t;
}

Complex MomentCumulantTable::value(int order, int conj_count) const {
    if (order < 1 || order > order_)
        throw CompletenessError("MomentCumulantTable: order " + std::to_string(order) +
                                " not declared (table holds orders 1.." + std::to_string(order_) +
                                ")");
    if (mode_ == Mode::real) return values_.at({order, 0});
    if (conj_count < 0 || conj_count > order)
        throw CompletenessError("MomentCumulantTable: conjugation count out of range");
    return values_.at({order, conj_count});
}

namespace {

// Shared kernel: with lower-order cumulants known, the order-n moment at
// conjugation count c is the sum over partitions of [n] (conjugates sitting
// in positions 1..c) of the product of block cumulants.  The full-set block
// is split out so the same loop serves both directions.
struct PartitionSum {
    Complex proper = 0;  // sum over partitions with >= 2 blocks
};

PartitionSum proper_partition_sum(int n, int c,
                                  const std::function<Complex(int, int)>& cumulant) {
    PartitionSum out;
    enumerate_partitions(n, [&](const SetPartition& p) {
        if (p.block_count() == 1) return;
        Complex prod = 1;
        for (const auto& block : p.blocks()) {
            int conj = 0;
            for (Label v : block)
                if (v <= c) ++conj;
            prod *= cumulant(static_cast<int>(block.size()), conj);
        }
        out.proper += prod;
    });
    return out;
}

}  // namespace

MomentCumulantTable cumulants_from_moments(const MomentCumulantTable& moments) {
    int n = moments.max_order();
    bool complex_mode = moments.mode() == MomentCumulantTable::Mode::complex_mode;
    std::map<std::pair<int, int>, Complex> cum;
    auto lookup = [&](int k, int c) { return cum.at({k, complex_mode ? c : 0}); };
    for (int k = 1; k <= n; ++k) {
        int cmax = complex_mode ? k : 0;
        for (int c = 0; c <= cmax; ++c) {
            Complex proper = proper_partition_sum(k, c, lookup).proper;
            cum[{k, c}] = moments.value(k, c) - proper;
        }
    }
    if (!complex_mode) {
        std::vector<Complex> by_order(n);
        for (int k = 1; k <= n; ++k) by_order[k - 1] = cum.at({k, 0});
        return MomentCumulantTable::real_table(std::move(by_order));
    }
    return MomentCumulantTable::complex_table(n, std::move(cum));
}

MomentCumulantTable moments_from_cumulants(const MomentCumulantTable& cumulants) {
    int n = cumulants.max_order();
    bool complex_mode = cumulants.mode() == MomentCumulantTable::Mode::complex_mode;
    std::map<std::pair<int, int>, Complex> mom;
    auto lookup = [&](int k, int c) { return cumulants.value(k, c); };
    for (int k = 1; k <= n; ++k) {
        int cmax = complex_mode ? k : 0;
        for (int c = 0; c <= cmax; ++c) {
            Complex proper = proper_partition_sum(k, c, lookup).proper;
            mom[{k, c}] = cumulants.value(k, c) + proper;
        }
    }
    if (!complex_mode) {
        std::vector<Complex> by_order(n);
        for (int k = 1; k <= n; ++k) by_order[k - 1] = mom.at({k, 0});
        return MomentCumulantTable::real_table(std::move(by_order));
    }
    return MomentCumulantTable::complex_table(n, std::move(mom));
}

}  // namespace rmtcum
