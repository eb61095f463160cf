#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rmtcum/expansion.hpp"
#include "rmtcum/sampler.hpp"
#include "rmtcum/spi.hpp"

using namespace rmtcum;

namespace {

Monomial word_xx() { return {{Slot{1, Mark::plain, ""}, Slot{1, Mark::plain, ""}}, {1.0, 0.0}}; }
Monomial word_xd(const std::string& d) { return {{Slot{1, Mark::plain, d}}, {1.0, 0.0}}; }
Monomial word_xdxd(const std::string& d) {
    return {{Slot{1, Mark::plain, d}, Slot{1, Mark::plain, d}}, {1.0, 0.0}};
}

void check_close(Complex a, Complex b, double tol = 1e-9) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    CHECK(std::abs(a - b) <= tol * scale);
}

Matrix random_unit_norm(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m / operator_norm(m);
}

}  // namespace

TEST_CASE("entry cumulant tables of the builtin models") {
    EntryCumulantModel gue = EntryCumulantModel::gue();
    CHECK_FALSE(gue.real_entries());
    check_close(gue.offdiag(2, 1), Complex(1, 0), 1e-12);
    check_close(gue.offdiag(2, 0), Complex(0, 0), 1e-12);
    check_close(gue.offdiag(4, 2), Complex(0, 0), 1e-12);
    check_close(gue.diag(2), Complex(1, 0), 1e-12);
    check_close(gue.diag(4), Complex(0, 0), 1e-12);

    EntryCumulantModel goe = EntryCumulantModel::goe();
    CHECK(goe.real_entries());
    check_close(goe.offdiag(2, 0), Complex(1, 0), 1e-12);
    check_close(goe.diag(2), Complex(2, 0), 1e-12);

    EntryCumulantModel uni = EntryCumulantModel::uniform_wigner();
    CHECK(uni.real_entries());
    check_close(uni.offdiag(2, 0), Complex(1.0 / 12.0, 0), 1e-14);
    check_close(uni.offdiag(4, 0), Complex(-1.0 / 120.0, 0), 1e-14);
    check_close(uni.offdiag(6, 0), Complex(1.0 / 252.0, 0), 1e-14);
    check_close(uni.offdiag(3, 0), Complex(0, 0), 1e-14);
    check_close(uni.diag(2), Complex(1.0 / 12.0, 0), 1e-14);
}

TEST_CASE("wigner factory rejects asymmetric entry laws") {
    MomentCumulantTable odd = MomentCumulantTable::real_table({0.0, 1.0, 0.5, 0.0});
    CHECK_THROWS_AS(EntryCumulantModel::wigner(odd, odd, 1.0), ContractError);
}

TEST_CASE("gaussian specialization matches the general expansion") {
    for (int n : {2, 3}) {
        DeterministicSet det(n);
        det.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
        for (auto tag : {EnsembleTag::gue, EnsembleTag::goe}) {
            EntryCumulantModel model =
                tag == EnsembleTag::gue ? EntryCumulantModel::gue() : EntryCumulantModel::goe();
            for (int r : {1, 2}) {
                std::vector<Monomial> args(r, word_xdxd("b"));
                auto general = exact_cumulant(args, model, det, n);
                auto gauss = exact_cumulant_gaussian(args, det, n, tag);
                check_close(general.value, gauss.value);
            }
        }
    }
}

TEST_CASE("odd total degree vanishes") {
    DeterministicSet det(3);
    std::vector<Monomial> args{word_xx(), {{Slot{1, Mark::plain, ""}}, {1.0, 0.0}}};
    check_close(exact_cumulant(args, EntryCumulantModel::gue(), det, 3).value, {0, 0}, 1e-14);
    check_close(exact_cumulant_gaussian(args, det, 3, EnsembleTag::goe).value, {0, 0}, 1e-14);
    check_close(exact_cumulant(args, EntryCumulantModel::uniform_wigner(), det, 3).value,
                {0, 0}, 1e-14);
}

TEST_CASE("mixed cumulants of independent symbols vanish") {
    DeterministicSet det(3);
    Monomial x1sq = word_xx();
    Monomial x2sq{{Slot{2, Mark::plain, ""}, Slot{2, Mark::plain, ""}}, {1.0, 0.0}};
    auto res = exact_cumulant({x1sq, x2sq}, EntryCumulantModel::gue(), det, 3);
    check_close(res.value, {0, 0}, 1e-12);
    auto resg = exact_cumulant_gaussian({x1sq, x2sq}, det, 3, EnsembleTag::gue);
    check_close(resg.value, {0, 0}, 1e-12);
}

TEST_CASE("first and second GUE cumulants of Tr X^2") {
    for (int n : {2, 3, 5, 8}) {
        DeterministicSet det(n);
        auto k1 = exact_cumulant_gaussian({word_xx()}, det, n, EnsembleTag::gue);
        check_close(k1.value, Complex(n, 0));
        auto k2 = exact_cumulant_gaussian({word_xx(), word_xx()}, det, n, EnsembleTag::gue);
        check_close(k2.value, Complex(2, 0));
    }
}

TEST_CASE("transpose marks flow through the gaussian expansion") {
    // Tr(X X^T) for GUE: E = sum E[x_ij x_ji] = N (diagonal terms only)
    DeterministicSet det(4);
    Monomial xxt{{Slot{1, Mark::plain, ""}, Slot{1, Mark::transpose, ""}}, {1.0, 0.0}};
    auto k1 = exact_cumulant_gaussian({xxt}, det, 4, EnsembleTag::gue);
    check_close(k1.value, Complex(1, 0));
    // for GOE, X^T = X, so Tr(X X^T) = Tr X^2
    auto goe_t = exact_cumulant_gaussian({xxt}, det, 4, EnsembleTag::goe);
    auto goe_p = exact_cumulant_gaussian({word_xx()}, det, 4, EnsembleTag::goe);
    check_close(goe_t.value, goe_p.value);
}

TEST_CASE("oracle equivalence on a small grid") {
    OracleOptions oopts{4, 4};
    for (int n : {2, 3}) {
        DeterministicSet det(n);
        det.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
        det.add("u", random_unit_norm(n, 77));
        for (auto model : {EntryCumulantModel::gue(), EntryCumulantModel::goe(),
                           EntryCumulantModel::uniform_wigner()}) {
            check_close(exact_cumulant({word_xx()}, model, det, n).value,
                        bruteforce_cumulant_oracle({word_xx()}, model, det, n, oopts));
            check_close(exact_cumulant({word_xd("b"), word_xd("b")}, model, det, n).value,
                        bruteforce_cumulant_oracle({word_xd("b"), word_xd("b")}, model, det, n,
                                                   oopts));
            check_close(exact_cumulant({word_xdxd("u")}, model, det, n).value,
                        bruteforce_cumulant_oracle({word_xdxd("u")}, model, det, n, oopts));
        }
    }
}

TEST_CASE("oracle budget guard") {
    DeterministicSet det(8);
    CHECK_THROWS_AS(
        bruteforce_cumulant_oracle({word_xx()}, EntryCumulantModel::gue(), det, 8, {4, 6}),
        SizeError);
    std::vector<Monomial> big(3, word_xx());
    CHECK_THROWS_AS(
        bruteforce_cumulant_oracle(big, EntryCumulantModel::gue(), det, 2, {4, 6}),
        SizeError);
}

TEST_CASE("deterministic sums: direct evaluation and audit bound") {
    int n = 3;
    DeterministicSet det(n);
    det.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
    SpiOptions opts;
    opts.audit = true;
    DeterministicSum sum(det, {"b", "b"}, CyclicPartition({2}), opts);
    GroundSet dom = GroundSet::signed_range(2);
    // free sum: S = sum_{psi} b(psi(-1), psi(2)) b(psi(-2), psi(1))
    //         = (sum_{ij} b_ij)^2 = (n + (n-1))^2
    Complex free_sum = sum.s_geq(SetPartition::singletons(dom));
    check_close(free_sum, Complex(25, 0), 1e-12);
    // fully merged: S = sum_a b_aa^2 = n
    Complex merged = sum.s_geq(SetPartition::one_block(dom));
    check_close(merged, Complex(3, 0), 1e-12);
    // inclusion-exclusion: sum of s_eq over all partitions equals the free sum
    Complex total(0, 0);
    enumerate_partitions(dom, [&](const SetPartition& pi) { total += sum.s_eq(pi); });
    check_close(total, free_sum, 1e-10);
}

TEST_CASE("tensor budget guard") {
    int n = 16;
    DeterministicSet det(n);
    det.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
    SpiOptions opts;
    opts.tensor_budget = 8;  // absurdly small
    DeterministicSum sum(det, {"b", "b", "b", "b"}, CyclicPartition({4}), opts);
    CHECK_THROWS_AS(sum.s_geq(SetPartition::singletons(GroundSet::signed_range(4))),
                    SizeError);
}

TEST_CASE("corollary bounds hold on exact values") {
    for (int n : {2, 4}) {
        DeterministicSet det(n);
        det.add("b", builtin_deterministic("upper-bidiagonal-ones", n));
        for (int r : {1, 2, 3}) {
            std::vector<Monomial> args(r, word_xdxd("b"));
            for (auto model : {EntryCumulantModel::gue(), EntryCumulantModel::goe(),
                               EntryCumulantModel::uniform_wigner()}) {
                BoundVerdict v = verify_bound(args, model, det, n);
                CHECK(v.pass);
                CHECK(v.N == n);
                CHECK(v.r == r);
                CHECK(v.m == 2 * r);
            }
        }
    }
}

TEST_CASE("polynomial cumulants expand multilinearly") {
    int n = 3;
    DeterministicSet det(n);
    PolynomialSpec spec;
    spec.monomials.push_back(word_xx());
    spec.monomials.push_back({{Slot{1, Mark::plain, ""}}, {2.0, 0.0}});  // + 2 Tr X
    EntryCumulantModel gue = EntryCumulantModel::gue();
    Complex poly2 = exact_cumulant_poly(2, spec, gue, det, n);
    // K2(A + 2B) = K2(A,A) + 4 K2(B,B) + 4 K2(A,B), with the cross term zero
    Monomial x{{Slot{1, Mark::plain, ""}}, {1.0, 0.0}};
    Complex aa = exact_cumulant_gaussian({word_xx(), word_xx()}, det, n, EnsembleTag::gue).value;
    Complex bb = exact_cumulant_gaussian({x, x}, det, n, EnsembleTag::gue).value;
    Complex ab = exact_cumulant_gaussian({word_xx(), x}, det, n, EnsembleTag::gue).value;
    check_close(ab, {0, 0}, 1e-12);
    check_close(poly2, aa + 4.0 * bb + 4.0 * ab);
}

TEST_CASE("expansion ledger records contributing terms") {
    DeterministicSet det(2);
    ExpansionOptions opts;
    opts.keep_ledger = true;
    auto res = exact_cumulant({word_xx(), word_xx()}, EntryCumulantModel::gue(), det, 2, opts);
    CHECK(res.contributing_terms > 0);
    CHECK(res.ledger.size() >= static_cast<std::size_t>(res.contributing_terms));
    Complex total(0, 0);
    for (const auto& row : res.ledger) total += row.contribution;
    check_close(total * 0.25, res.value, 1e-9);  // ledger is pre-N^{-m/2} scaling
    std::string csv = ledger_csv(res);
    CHECK(csv.find("pi,tau") == 0);
}

TEST_CASE("word length budget guard") {
    DeterministicSet det(2);
    ExpansionOptions opts;
    opts.max_m = 3;
    std::vector<Monomial> args(2, word_xx());
    CHECK_THROWS_AS(exact_cumulant(args, EntryCumulantModel::gue(), det, 2, opts), SizeError);
    opts.max_m = 10;
    std::vector<Monomial> big(6, word_xx());
    CHECK_THROWS_AS(exact_cumulant_gaussian(big, det, 2, EnsembleTag::goe, opts), SizeError);
}
