#pragma once

#include <unordered_map>

#include "rmtcum/deterministic.hpp"
#include "rmtcum/multigraph.hpp"
#include "rmtcum/partition.hpp"
#include "rmtcum/word_graphs.hpp"

namespace rmtcum {

struct SpiOptions {
    /// Max entries of any intermediate tensor during contraction.
    std::size_t tensor_budget = std::size_t(1) << 26;
    /// When set, every s_geq value is checked against its graph bound
    /// N^t * prod of operator norms; a violation throws ContractError.
    bool audit = false;
};

/// Evaluator for the sums of products of deterministic-matrix entries
/// attached to a word with cycle structure gamma: position l carries the
/// matrix d_names[l-1] read at (psi(-l), psi(gamma(l))).
///
/// s_geq(pi) sums over all index maps psi with ker(psi) >= pi; s_eq(pi)
/// restricts to ker(psi) = pi exactly (computed from s_geq by inclusion-
/// exclusion over coarsenings).  Values are memoized per partition.
class DeterministicSum {
  public:
    DeterministicSum(const DeterministicSet& detset, std::vector<std::string> d_names,
                     CyclicPartition gamma, SpiOptions opts = {});

    int m() const { return gamma_.total(); }
    int dimension() const { return detset_->dimension(); }
    const CyclicPartition& gamma() const { return gamma_; }
    /// Product of the operator norms of the attached matrices.
    double norm_product() const { return norm_product_; }

    Complex s_geq(const SetPartition& pi) const;
    Complex s_eq(const SetPartition& pi) const;

  private:
    Complex s_geq_uncached(const SetPartition& pi) const;

    const DeterministicSet* detset_;
    std::vector<std::string> d_names_;
    CyclicPartition gamma_;
    SpiOptions opts_;
    double norm_product_;
    MultiGraph d_graph_;
    mutable std::unordered_map<std::string, Complex> geq_cache_;
    mutable std::unordered_map<std::string, Complex> eq_cache_;
};

}  // namespace rmtcum
