#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rmtcum/bigint.hpp"
#include "rmtcum/half_integer.hpp"
#include "rmtcum/moment_cumulant.hpp"
#include "rmtcum/partition.hpp"

using namespace rmtcum;

namespace {

// Reference join: repeatedly merge blocks that share an element.
SetPartition naive_join(const SetPartition& a, const SetPartition& b) {
    std::vector<std::vector<Label>> blocks = a.blocks();
    for (const auto& bb : b.blocks()) blocks.push_back(bb);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < blocks.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < blocks.size() && !changed; ++j) {
                bool meet = false;
                for (Label v : blocks[j])
                    if (std::find(blocks[i].begin(), blocks[i].end(), v) != blocks[i].end()) {
                        meet = true;
                        break;
                    }
                if (!meet) continue;
                for (Label v : blocks[j])
                    if (std::find(blocks[i].begin(), blocks[i].end(), v) == blocks[i].end())
                        blocks[i].push_back(v);
                blocks.erase(blocks.begin() + j);
                changed = true;
            }
        }
    }
    return SetPartition(a.domain(), std::move(blocks));
}

std::vector<SetPartition> all_partitions(int n) {
    std::vector<SetPartition> out;
    enumerate_partitions(n, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

}  // namespace

TEST_CASE("big integers: known values") {
    CHECK(bell_number(0).str() == "1");
    CHECK(bell_number(1).str() == "1");
    CHECK(bell_number(5).str() == "52");
    CHECK(bell_number(10).str() == "115975");
    CHECK(bell_number(20).str() == "51724158235372");
    CHECK(factorial(10).str() == "3628800");
    CHECK(double_factorial(-1).str() == "1");
    CHECK(double_factorial(0).str() == "1");
    CHECK(double_factorial(7).str() == "105");
    CHECK(double_factorial(10).str() == "3840");
    CHECK(integer_partition_count(0).str() == "1");
    CHECK(integer_partition_count(5).str() == "7");
    CHECK(integer_partition_count(10).str() == "42");
    CHECK(integer_partition_count(100).str() == "190569292");
    BigInt a(1);
    for (int i = 1; i <= 25; ++i) a *= BigInt(i);
    CHECK(a == factorial(25));
    CHECK(a.as_double() == doctest::Approx(1.551121e25).epsilon(1e-6));
}

TEST_CASE("half integers") {
    HalfInteger h = HalfInteger::whole(2) + HalfInteger::halves(1);
    CHECK(h.str() == "5/2");
    CHECK(h.as_double() == 2.5);
    CHECK_FALSE(h.is_integer());
    CHECK(HalfInteger::halves(4).str() == "2");
    CHECK(HalfInteger::whole(1) < h);
    CHECK(h - HalfInteger::halves(1) == HalfInteger::whole(2));
}

TEST_CASE("set partition canonical form") {
    GroundSet dom = GroundSet::range(5);
    SetPartition p(dom, {{5, 3}, {2}, {4, 1}});
    CHECK(p.canonical_string() == "{1,4}{2}{3,5}");
    CHECK(p.block_count() == 3);
    CHECK(p.block_index_of(5) == 2);
    CHECK(p.block_of(4) == std::vector<Label>{1, 4});
    CHECK_FALSE(p.is_pairing());
    CHECK_FALSE(p.all_blocks_even());
    SetPartition q(dom, {{1, 4}, {3, 5}, {2}});
    CHECK(p == q);
}

TEST_CASE("enumeration counts match Bell, pairing and even-partition formulas") {
    for (int n = 1; n <= 9; ++n) {
        long count = 0;
        enumerate_partitions(n, [&](const SetPartition&) { ++count; });
        CHECK(BigInt(static_cast<std::uint64_t>(count)) == bell_number(n));
    }
    for (int n = 2; n <= 10; n += 2) {
        long count = 0;
        enumerate_pairings(GroundSet::range(n), [&](const SetPartition& p) {
            CHECK(p.is_pairing());
            ++count;
        });
        CHECK(BigInt(static_cast<std::uint64_t>(count)) == double_factorial(n - 1));
    }
    // all-even-block partition counts: 1, 4, 31, 379 for n = 2, 4, 6, 8
    std::vector<long> expected{1, 4, 31, 379};
    for (int k = 0; k < 4; ++k) {
        long count = 0;
        enumerate_even_partitions(2 * (k + 1), [&](const SetPartition& p) {
            CHECK(p.all_blocks_even());
            ++count;
        });
        CHECK(count == expected[k]);
    }
    CHECK_THROWS_AS(enumerate_even_partitions(3, [](const SetPartition&) {}), ParityError);
}

TEST_CASE("enumeration guard names the Bell number") {
    try {
        enumerate_partitions(15, [](const SetPartition&) {});
        FAIL("expected SizeError");
    } catch (const SizeError& e) {
        std::string msg = e.what();
        CHECK(msg.find(bell_number(15).str()) != std::string::npos);
    }
    // explicit override admits larger domains
    long seen = 0;
    enumerate_partitions(GroundSet::range(3),
                         [&](const SetPartition&) { ++seen; }, 3);
    CHECK(seen == 5);
}

TEST_CASE("join against the naive merge, exhaustively for n <= 4") {
    for (int n = 2; n <= 4; ++n) {
        auto ps = all_partitions(n);
        for (const auto& a : ps)
            for (const auto& b : ps) {
                SetPartition j = join(a, b);
                CHECK(j == naive_join(a, b));
                CHECK(is_refinement(a, j));
                CHECK(is_refinement(b, j));
            }
    }
}

TEST_CASE("join on random pairs for n = 5 and lattice properties") {
    std::mt19937_64 rng(12345);
    auto ps = all_partitions(5);
    std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
    for (int t = 0; t < 300; ++t) {
        const auto& a = ps[pick(rng)];
        const auto& b = ps[pick(rng)];
        SetPartition j = join(a, b);
        CHECK(j == naive_join(a, b));
        CHECK(join(a, a) == a);
        CHECK(join(a, b) == join(b, a));
        // least upper bound: any partition above both is above the join
        const auto& c = ps[pick(rng)];
        if (is_refinement(a, c) && is_refinement(b, c)) CHECK(is_refinement(j, c));
    }
    GroundSet dom = GroundSet::range(5);
    for (const auto& p : ps) {
        CHECK(is_refinement(SetPartition::singletons(dom), p));
        CHECK(is_refinement(p, SetPartition::one_block(dom)));
    }
}

TEST_CASE("kernel groups equal values") {
    GroundSet dom = GroundSet::range(6);
    SetPartition k = kernel(dom, {7, 3, 7, 1, 3, 7});
    CHECK(k.canonical_string() == "{1,3,6}{2,5}{4}");
    CHECK_THROWS_AS(kernel(dom, {1, 2}), DomainError);
}

TEST_CASE("cyclic partition of monomial lengths") {
    CyclicPartition gamma({3, 2});
    CHECK(gamma.total() == 5);
    CHECK(gamma.cycle_count() == 2);
    CHECK(gamma.partition().canonical_string() == "{1,2,3}{4,5}");
    CHECK(gamma.next(1) == 2);
    CHECK(gamma.next(3) == 1);
    CHECK(gamma.next(5) == 4);
    CHECK(gamma.prev(4) == 5);
    CHECK(gamma.prev(1) == 3);
    CHECK_THROWS_AS(CyclicPartition({2, 0}), ShapeError);
}

TEST_CASE("pairing lifts") {
    SetPartition tau(GroundSet::range(4), {{1, 3}, {2, 4}});
    SetPartition lifted = lift_pairing(tau);
    CHECK(lifted.domain() == GroundSet::signed_range(4));
    CHECK(lifted.is_pairing());
    CHECK(lifted.block_index_of(1) == lifted.block_index_of(-3));
    CHECK(lifted.block_index_of(3) == lifted.block_index_of(-1));
    CHECK(lifted.block_index_of(2) == lifted.block_index_of(-4));

    std::vector<Mark> plain(4, Mark::plain);
    CHECK(lift_pairing_eps(tau, plain) == lifted);
    std::vector<Mark> both(4, Mark::transpose);
    CHECK(lift_pairing_eps(tau, both) == lifted);

    std::vector<Mark> mixed{Mark::plain, Mark::plain, Mark::transpose, Mark::plain};
    SetPartition me = lift_pairing_eps(tau, mixed);
    // {1,3} has mixed marks: {1,3} and {-1,-3}; {2,4} has equal marks
    CHECK(me.block_index_of(1) == me.block_index_of(3));
    CHECK(me.block_index_of(-1) == me.block_index_of(-3));
    CHECK(me.block_index_of(2) == me.block_index_of(-4));
}

TEST_CASE("crossing pairing construction, exhaustively for m <= 6, r <= 3") {
    for (int r = 2; r <= 3; ++r) {
        for (int m = 2 * r; m <= 6; m += 2) {
            // compositions of m into r parts
            for (int m1 = 1; m1 < m; ++m1) {
                std::vector<std::vector<int>> mvecs;
                if (r == 2) {
                    mvecs.push_back({m1, m - m1});
                } else {
                    for (int m2 = 1; m1 + m2 < m; ++m2)
                        mvecs.push_back({m1, m2, m - m1 - m2});
                }
                for (const auto& mv : mvecs) {
                    CyclicPartition gamma(mv);
                    enumerate_even_partitions(m, [&](const SetPartition& tau) {
                        if (join(tau, gamma.partition()).block_count() != 1) return;
                        SetPartition sigma = find_crossing_pairing(tau, gamma.partition());
                        CHECK(sigma.is_pairing());
                        CHECK(is_refinement(sigma, tau));
                        int limit = (r % 2 == 0) ? r / 2 : (r + 1) / 2;
                        CHECK(join(sigma, gamma.partition()).block_count() <= limit);
                        // determinism
                        CHECK(find_crossing_pairing(tau, gamma.partition()) == sigma);
                    });
                }
            }
        }
    }
}

TEST_CASE("crossing pairing rejects bad inputs") {
    CyclicPartition gamma({2, 2});
    GroundSet dom = GroundSet::range(4);
    SetPartition odd_blocks(dom, {{1, 2, 3}, {4}});
    CHECK_THROWS_AS(find_crossing_pairing(odd_blocks, gamma.partition()), ContractError);
    SetPartition disconnected(dom, {{1, 2}, {3, 4}});  // join with gamma stays split
    CHECK_THROWS_AS(find_crossing_pairing(disconnected, gamma.partition()), ContractError);
}

TEST_CASE("moment-cumulant Mobius inversion round trip") {
    MomentCumulantTable cums =
        MomentCumulantTable::real_table({0.7, 1.3, -0.2, 0.05, 0.9, -1.7});
    MomentCumulantTable mom = moments_from_cumulants(cums);
    MomentCumulantTable back = cumulants_from_moments(mom);
    for (int k = 1; k <= 6; ++k)
        CHECK(std::abs(back.value(k, 0) - cums.value(k, 0)) <= 1e-12 *
              std::max(1.0, std::abs(cums.value(k, 0))));
    // standard normal: moments are (k-1)!! for even k
    MomentCumulantTable gauss = moments_from_cumulants(
        MomentCumulantTable::real_table({0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}));
    CHECK(gauss.value(2, 0).real() == doctest::Approx(1.0));
    CHECK(gauss.value(4, 0).real() == doctest::Approx(3.0));
    CHECK(gauss.value(6, 0).real() == doctest::Approx(15.0));
    CHECK(gauss.value(8, 0).real() == doctest::Approx(105.0));
    CHECK(gauss.value(3, 0).real() == doctest::Approx(0.0));
    CHECK_THROWS_AS(gauss.value(9, 0), CompletenessError);
}

TEST_CASE("complex tables track the conjugation count") {
    // circular entry: K(2,1) = 1, all else zero -> E[z z*] = 1, E[z^2] = 0
    std::map<std::pair<int, int>, Complex> k;
    for (int order = 1; order <= 4; ++order)
        for (int c = 0; c <= order; ++c) k[{order, c}] = Complex(0, 0);
    k[{2, 1}] = Complex(1, 0);
    MomentCumulantTable mom =
        moments_from_cumulants(MomentCumulantTable::complex_table(4, k));
    CHECK(std::abs(mom.value(2, 1) - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(mom.value(2, 0)) < 1e-12);
    CHECK(std::abs(mom.value(4, 2) - Complex(2, 0)) < 1e-12);  // E|z|^4 = 2
    CHECK(std::abs(mom.value(4, 1)) < 1e-12);
}

TEST_CASE("partition-sum coefficient mass is bounded by n! p(n)") {
    // sum over partitions of prod (|B|-1)! is at most n! * p(n)
    for (int n = 1; n <= 9; ++n) {
        double sum = 0.0;
        enumerate_partitions(n, [&](const SetPartition& p) {
            double prod = 1.0;
            for (const auto& b : p.blocks())
                for (std::size_t k = 2; k < b.size(); ++k) prod *= static_cast<double>(k);
            sum += prod;
        });
        double bound = factorial(n).as_double() * integer_partition_count(n).as_double();
        CHECK(sum <= bound * (1.0 + 1e-12));
    }
}
