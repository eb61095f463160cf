#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmtcum/errors.hpp"

namespace rmtcum {

using Label = int;

/// Ordered list of distinct integer labels.  Supports both {1..m} and the
/// signed set {-m..-1, 1..m}.
class GroundSet {
  public:
    GroundSet() = default;
    explicit GroundSet(std::vector<Label> elements);

    /// {1, 2, ..., m}
    static GroundSet range(int m);
    /// {-m, ..., -1, 1, ..., m}
    static GroundSet signed_range(int m);

    const std::vector<Label>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    bool contains(Label v) const;
    int index_of(Label v) const;  // position in the sorted element list
    bool operator==(const GroundSet&) const = default;

  private:
    std::vector<Label> elements_;  // sorted, distinct
};

/// Partition of a GroundSet into disjoint nonempty blocks, kept in canonical
/// form: elements sorted within blocks, blocks sorted by minimum.  Canonical
/// form makes equality, ordering and string keys well defined.
class SetPartition {
  public:
    SetPartition() = default;
    SetPartition(GroundSet domain, std::vector<std::vector<Label>> blocks);

    static SetPartition singletons(const GroundSet& domain);
    static SetPartition one_block(const GroundSet& domain);

    const GroundSet& domain() const { return domain_; }
    const std::vector<std::vector<Label>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_index_of(Label v) const;
    const std::vector<Label>& block_of(Label v) const { return blocks_[block_index_of(v)]; }
    bool is_pairing() const;
    bool all_blocks_even() const;

    std::string canonical_string() const;
    bool operator==(const SetPartition&) const = default;

  private:
    GroundSet domain_;
    std::vector<std::vector<Label>> blocks_;
    std::vector<int> block_index_;  // aligned with domain_.elements()
};

/// pi v sigma: least upper bound in refinement order.
SetPartition join(const SetPartition& a, const SetPartition& b);

/// True iff every block of a lies inside a block of b (a <= b).
bool is_refinement(const SetPartition& a, const SetPartition& b);

/// ker(psi): groups positions whose values coincide.
SetPartition kernel(const GroundSet& domain, const std::vector<Label>& values);

inline constexpr int kDefaultPartitionGuard = 14;

/// Streams every partition of the domain exactly once, in restricted-growth
/// string order.  Guarded: Bell(n) explodes fast.
void enumerate_partitions(const GroundSet& domain,
                          const std::function<void(const SetPartition&)>& visit,
                          int guard = kDefaultPartitionGuard);
void enumerate_partitions(int n, const std::function<void(const SetPartition&)>& visit,
                          int guard = kDefaultPartitionGuard);

/// Streams every perfect pairing of the (even) domain; count is (|A|-1)!!.
void enumerate_pairings(const GroundSet& domain,
                        const std::function<void(const SetPartition&)>& visit);

/// Streams every partition of [n] all of whose blocks have even size.
void enumerate_even_partitions(int n, const std::function<void(const SetPartition&)>& visit,
                               int guard = kDefaultPartitionGuard);

/// The trace-cycle partition of [m] for monomial lengths m_vec, together with
/// the cyclic successor map on each block.
class CyclicPartition {
  public:
    explicit CyclicPartition(std::vector<int> m_vec);

    const SetPartition& partition() const { return partition_; }
    const std::vector<int>& monomial_lengths() const { return m_vec_; }
    int total() const { return m_; }
    int cycle_count() const { return static_cast<int>(m_vec_.size()); }
    /// Cyclic successor of l within its block.
    int next(int l) const;
    /// Cyclic predecessor of l within its block.
    int prev(int l) const;

  private:
    std::vector<int> m_vec_;
    int m_ = 0;
    SetPartition partition_;
    std::vector<int> next_, prev_;  // 1-indexed
};

/// Transpose mark on a random-matrix letter.
enum class Mark : char { plain = 0, transpose = 1 };

/// Lifts a pairing tau of [m] to the pairing of +-[m] with blocks {u,-v} and
/// {v,-u} per block {u,v} of tau.
SetPartition lift_pairing(const SetPartition& tau);

/// Transpose-aware lift: equal marks give {u,-v},{v,-u}; mixed marks give
/// {u,v},{-u,-v}.
SetPartition lift_pairing_eps(const SetPartition& tau, const std::vector<Mark>& eps);

/// Given tau with even blocks, join(tau, gamma) = 1 and r = #(gamma) >= 2,
/// returns a pairing sigma <= tau with #(sigma v gamma) <= ceil(r/2).
/// Free choices are resolved lexicographically, so the result is deterministic.
SetPartition find_crossing_pairing(const SetPartition& tau, const SetPartition& gamma);

}  // namespace rmtcum
