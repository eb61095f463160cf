#include "rmtcum/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "rmtcum/bigint.hpp"

namespace rmtcum {

namespace {

// Compensated (Kahan) accumulator; partition sums mix wildly different
// magnitudes and the tests check 1e-9 relative agreement.
struct KahanSum {
    Complex sum{0.0, 0.0};
    Complex comp{0.0, 0.0};
    void add(Complex v) {
        Complex y = v - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Flattened word data for a list of trace monomials.
struct FlatWord {
    int m = 0;
    std::vector<int> x_idx;           // 1-based position -> random symbol
    std::vector<Mark> marks;          // 1-based position -> transpose mark
    std::vector<std::string> d_names; // 0-based position-1 -> deterministic name
    Complex coefficient{1.0, 0.0};
    CyclicPartition gamma{std::vector<int>{1}};
};

FlatWord flatten(const std::vector<Monomial>& monomials) {
    if (monomials.empty()) throw ShapeError("cumulant expansion: no trace arguments");
    FlatWord w;
    std::vector<int> m_vec = monomial_lengths(monomials);
    for (int mk : m_vec)
        if (mk < 1) throw ShapeError("cumulant expansion: empty monomial word");
    w.gamma = CyclicPartition(m_vec);
    w.m = w.gamma.total();
    w.x_idx.assign(w.m + 1, 0);
    w.marks.assign(w.m + 1, Mark::plain);
    int l = 1;
    for (const auto& mono : monomials) {
        w.coefficient *= mono.coefficient;
        for (const Slot& s : mono.slots) {
            w.x_idx[l] = s.x_index;
            w.marks[l] = s.mark;
            w.d_names.push_back(s.d_name);
            ++l;
        }
    }
    return w;
}

// Effective ordered (row, col) pair of block indices for position l under
// pi: the entry read is x_{psi(l), psi(-l)}, transposed when marked.
std::pair<int, int> effective_pair(const SetPartition& pi, const FlatWord& w, int l) {
    int a = pi.block_index_of(l);
    int b = pi.block_index_of(-l);
    if (w.marks[l] == Mark::transpose) std::swap(a, b);
    return {a, b};
}

// Joint cumulant of the entries referenced by the positions in block, all
// coincidences given by pi.  Zero when symbols or entry locations mix.
Complex block_cumulant(const SetPartition& pi, const std::vector<Label>& block,
                       const FlatWord& w, const EntryCumulantModel& model) {
    int l0 = block.front();
    int symbol = w.x_idx[l0];
    auto [r0, c0] = effective_pair(pi, w, l0);
    bool diag = r0 == c0;
    int conj = 0;
    for (Label l : block) {
        if (w.x_idx[l] != symbol) return Complex(0.0, 0.0);
        auto [a, b] = effective_pair(pi, w, l);
        if (diag) {
            if (a != b || a != r0) return Complex(0.0, 0.0);
        } else if (a == r0 && b == c0) {
            // same orientation as the reference entry
        } else if (a == c0 && b == r0) {
            ++conj;
        } else {
            return Complex(0.0, 0.0);
        }
    }
    int n = static_cast<int>(block.size());
    if (diag) return model.diag(n);
    return model.offdiag(n, model.real_entries() ? 0 : conj);
}

}  // namespace

EntryCumulantModel EntryCumulantModel::gue(int max_order) {
    std::map<std::pair<int, int>, Complex> off;
    for (int k = 1; k <= max_order; ++k)
        for (int c = 0; c <= k; ++c) off[{k, c}] = (k == 2 && c == 1) ? 1.0 : 0.0;
    std::vector<Complex> diag(max_order, 0.0);
    diag[1] = 1.0;
    EntryCumulantModel m;
    m.tag_ = EnsembleTag::gue;
    m.offdiag_ = MomentCumulantTable::complex_table(max_order, std::move(off));
    m.diag_ = MomentCumulantTable::real_table(std::move(diag));
    m.subexp_constant_ = 1.0;
    return m;
}

EntryCumulantModel EntryCumulantModel::goe(int max_order) {
    std::vector<Complex> off(max_order, 0.0), diag(max_order, 0.0);
    off[1] = 1.0;
    diag[1] = 2.0;
    EntryCumulantModel m;
    m.tag_ = EnsembleTag::goe;
    m.offdiag_ = MomentCumulantTable::real_table(std::move(off));
    m.diag_ = MomentCumulantTable::real_table(std::move(diag));
    m.subexp_constant_ = 1.0;
    return m;
}

EntryCumulantModel EntryCumulantModel::wigner(MomentCumulantTable offdiag,
                                              MomentCumulantTable diag,
                                              double subexp_constant) {
    for (int k = 1; k <= offdiag.max_order(); k += 2) {
        for (int c = 0; c <= (offdiag.mode() == MomentCumulantTable::Mode::real ? 0 : k); ++c) {
            if (std::abs(offdiag.value(k, c)) > 1e-14)
                throw ContractError("EntryCumulantModel: odd entry cumulants must vanish");
        }
    }
    for (int k = 1; k <= diag.max_order(); k += 2) {
        if (std::abs(diag.value(k, 0)) > 1e-14)
            throw ContractError("EntryCumulantModel: odd entry cumulants must vanish");
    }
    EntryCumulantModel m;
    m.tag_ = EnsembleTag::wigner_custom;
    m.offdiag_ = std::move(offdiag);
    m.diag_ = std::move(diag);
    m.subexp_constant_ = subexp_constant;
    return m;
}

EntryCumulantModel EntryCumulantModel::uniform_wigner(int max_order) {
    std::vector<Complex> moments(max_order, 0.0);
    for (int k = 2; k <= max_order; k += 2)
        moments[k - 1] = 1.0 / (std::pow(2.0, k) * (k + 1));
    MomentCumulantTable cum =
        cumulants_from_moments(MomentCumulantTable::real_table(std::move(moments)));
    double c = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        fact *= k;
        c = std::max(c, std::abs(cum.value(k, 0)) / fact);
    }
    EntryCumulantModel m = wigner(cum, cum, c);
    return m;
}

Complex entry_cumulant_for(const SetPartition& pi, const std::vector<Label>& tau_block,
                           const std::vector<Monomial>& monomials,
                           const EntryCumulantModel& model) {
    FlatWord w = flatten(monomials);
    for (Label l : tau_block)
        if (l < 1 || l > w.m)
            throw DomainError("entry_cumulant_for: position out of range");
    return block_cumulant(pi, tau_block, w, model);
}

ExactCumulantResult exact_cumulant(const std::vector<Monomial>& monomials,
                                   const EntryCumulantModel& model,
                                   const DeterministicSet& detset, int N,
                                   const ExpansionOptions& opts) {
    FlatWord w = flatten(monomials);
    if (w.m > opts.max_m)
        throw SizeError("exact_cumulant: total word length " + std::to_string(w.m) +
                        " exceeds budget " + std::to_string(opts.max_m));
    DeterministicSum dsum(detset, w.d_names, w.gamma, opts.spi);
    GroundSet signed_dom = GroundSet::signed_range(w.m);
    GroundSet plain_dom = GroundSet::range(w.m);
    ExactCumulantResult result;
    KahanSum acc;
    enumerate_partitions(signed_dom, [&](const SetPartition& pi) {
        // Group word positions by (symbol, entry location under pi); a
        // nonzero joint cumulant factor needs its block inside one group.
        std::map<std::tuple<int, int, int>, std::vector<Label>> groups;
        for (int l = 1; l <= w.m; ++l) {
            auto [a, b] = effective_pair(pi, w, l);
            groups[{w.x_idx[l], std::min(a, b), std::max(a, b)}].push_back(l);
        }
        for (const auto& [key, g] : groups)
            if (g.size() % 2 != 0) return;  // odd cumulants vanish
        // tau refines the grouping, so the grouping itself must already
        // join with gamma to the full set.
        std::vector<std::vector<Label>> group_blocks;
        group_blocks.reserve(groups.size());
        for (const auto& [key, g] : groups) group_blocks.push_back(g);
        SetPartition grouping(plain_dom, group_blocks);
        if (join(grouping, w.gamma.partition()).block_count() != 1) return;
        // Even-block partitions of each group, with the block cumulant
        // factors precomputed.
        struct TauChoice {
            std::vector<std::vector<Label>> blocks;
            Complex factor;
        };
        std::vector<std::vector<TauChoice>> per_group;
        for (const auto& g : group_blocks) {
            std::vector<TauChoice> choices;
            int sz = static_cast<int>(g.size());
            enumerate_even_partitions(sz, [&](const SetPartition& p) {
                TauChoice tc;
                tc.factor = 1.0;
                for (const auto& rb : p.blocks()) {
                    std::vector<Label> block;
                    block.reserve(rb.size());
                    for (Label i : rb) block.push_back(g[i - 1]);
                    tc.factor *= block_cumulant(pi, block, w, model);
                    tc.blocks.push_back(std::move(block));
                }
                if (tc.factor != Complex(0.0, 0.0)) choices.push_back(std::move(tc));
            });
            if (choices.empty()) return;  // no usable tau touches this group
            per_group.push_back(std::move(choices));
        }
        // Cartesian product over the groups; keep tau with tau v gamma = 1.
        Complex s0{0.0, 0.0};
        bool s0_ready = false;
        KahanSum tau_sum;
        std::vector<std::size_t> pick(per_group.size(), 0);
        std::vector<LedgerRow> rows;
        while (true) {
            std::vector<std::vector<Label>> tau_blocks;
            Complex factor = 1.0;
            for (std::size_t gi = 0; gi < per_group.size(); ++gi) {
                const TauChoice& tc = per_group[gi][pick[gi]];
                factor *= tc.factor;
                tau_blocks.insert(tau_blocks.end(), tc.blocks.begin(), tc.blocks.end());
            }
            SetPartition tau(plain_dom, tau_blocks);
            if (join(tau, w.gamma.partition()).block_count() == 1) {
                tau_sum.add(factor);
                if (opts.keep_ledger) {
                    if (!s0_ready) {
                        s0 = dsum.s_eq(pi);
                        s0_ready = true;
                    }
                    rows.push_back(
                        {pi.canonical_string(), tau.canonical_string(), s0, factor, s0 * factor});
                }
            }
            std::size_t gi = 0;
            while (gi < pick.size() && ++pick[gi] == per_group[gi].size()) pick[gi++] = 0;
            if (gi == pick.size()) break;
        }
        if (tau_sum.sum == Complex(0.0, 0.0)) return;
        if (!s0_ready) s0 = dsum.s_eq(pi);
        acc.add(s0 * tau_sum.sum);
        ++result.contributing_terms;
        if (opts.keep_ledger)
            result.ledger.insert(result.ledger.end(), rows.begin(), rows.end());
    }, std::max(2 * w.m, kDefaultPartitionGuard));
    result.value = w.coefficient * acc.sum * std::pow(static_cast<double>(N), -0.5 * w.m);
    return result;
}

ExactCumulantResult exact_cumulant_gaussian(const std::vector<Monomial>& monomials,
                                            const DeterministicSet& detset, int N,
                                            EnsembleTag ensemble,
                                            const ExpansionOptions& opts) {
    if (ensemble == EnsembleTag::wigner_custom)
        throw ContractError("exact_cumulant_gaussian: ensemble must be gue or goe");
    FlatWord w = flatten(monomials);
    ExactCumulantResult result;
    if (w.m % 2 != 0) return result;  // odd total length: exact zero
    if (ensemble == EnsembleTag::goe && w.m > 10)
        throw SizeError("exact_cumulant_gaussian: the 2^m transpose expansion for goe is "
                        "limited to m <= 10, got m = " + std::to_string(w.m));
    DeterministicSum dsum(detset, w.d_names, w.gamma, opts.spi);
    GroundSet plain_dom = GroundSet::range(w.m);
    auto pairing_sum = [&](const std::vector<Mark>& marks) {
        KahanSum acc;
        enumerate_pairings(plain_dom, [&](const SetPartition& tau) {
            for (const auto& b : tau.blocks())
                if (w.x_idx[b[0]] != w.x_idx[b[1]]) return;  // tau must refine ker(i)
            if (join(tau, w.gamma.partition()).block_count() != 1) return;
            SetPartition lift = lift_pairing_eps(tau, marks);
            Complex s = dsum.s_geq(lift);
            acc.add(s);
            ++result.contributing_terms;
            if (opts.keep_ledger)
                result.ledger.push_back(
                    {lift.canonical_string(), tau.canonical_string(), s, Complex(1.0, 0.0), s});
        });
        return acc.sum;
    };
    std::vector<Mark> base_marks(w.marks.begin() + 1, w.marks.end());
    Complex total{0.0, 0.0};
    if (ensemble == EnsembleTag::gue) {
        total = pairing_sum(base_marks);
    } else {
        KahanSum eps_acc;
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << w.m); ++bits) {
            std::vector<Mark> marks = base_marks;
            for (int l = 0; l < w.m; ++l) {
                if ((bits >> l) & 1)
                    marks[l] = marks[l] == Mark::plain ? Mark::transpose : Mark::plain;
            }
            eps_acc.add(pairing_sum(marks));
        }
        total = eps_acc.sum * std::pow(2.0, -0.5 * w.m);
    }
    result.value = w.coefficient * total * std::pow(static_cast<double>(N), -0.5 * w.m);
    return result;
}

Complex bruteforce_cumulant_oracle(const std::vector<Monomial>& monomials,
                                   const EntryCumulantModel& model,
                                   const DeterministicSet& detset, int N,
                                   const OracleOptions& opts) {
    int r = static_cast<int>(monomials.size());
    int m_total = 0;
    for (const auto& mono : monomials) m_total += static_cast<int>(mono.slots.size());
    if (m_total > opts.max_m)
        throw SizeError("bruteforce_cumulant_oracle: total word length " +
                        std::to_string(m_total) + " exceeds budget " +
                        std::to_string(opts.max_m));
    if (N > opts.max_n)
        throw SizeError("bruteforce_cumulant_oracle: N = " + std::to_string(N) +
                        " exceeds budget " + std::to_string(opts.max_n));
    MomentCumulantTable mom_off = moments_from_cumulants(model.offdiag_table());
    MomentCumulantTable mom_diag = moments_from_cumulants(model.diag_table());
    bool real_mode = model.real_entries();

    // Joint moment of the traces of a sub-list of the monomials, by full
    // enumeration of the index map psi.
    auto trace_moment = [&](const std::vector<Monomial>& part) {
        FlatWord w = flatten(part);
        int m = w.m;
        std::vector<const Matrix*> ds(m);
        for (int l = 1; l <= m; ++l) ds[l - 1] = &detset.get(w.d_names[l - 1]);
        // psi[0..m-1] = psi(1..m), psi[m..2m-1] = psi(-1..-m)
        std::vector<int> psi(2 * m, 0);
        auto psi_at = [&](int l) { return l > 0 ? psi[l - 1] : psi[m - l - 1]; };
        KahanSum acc;
        while (true) {
            Complex dprod{1.0, 0.0};
            for (int l = 1; l <= m && dprod != Complex(0.0, 0.0); ++l)
                dprod *= (*ds[l - 1])(psi_at(-l), psi_at(w.gamma.next(l)));
            if (dprod != Complex(0.0, 0.0)) {
                // Group positions by the actual entry referenced.
                std::map<std::tuple<int, int, int>, std::vector<int>> groups;
                for (int l = 1; l <= m; ++l) {
                    int a = psi_at(l), b = psi_at(-l);
                    if (w.marks[l] == Mark::transpose) std::swap(a, b);
                    groups[{w.x_idx[l], std::min(a, b), std::max(a, b)}].push_back(l);
                }
                Complex eprod{1.0, 0.0};
                for (const auto& [key, g] : groups) {
                    auto [sym, a, b] = key;
                    int n = static_cast<int>(g.size());
                    if (a == b) {
                        eprod *= mom_diag.value(n, 0);
                    } else if (real_mode) {
                        eprod *= mom_off.value(n, 0);
                    } else {
                        int ra = psi_at(g.front()), rb = psi_at(-g.front());
                        if (w.marks[g.front()] == Mark::transpose) std::swap(ra, rb);
                        int conj = 0;
                        for (int l : g) {
                            int xa = psi_at(l), xb = psi_at(-l);
                            if (w.marks[l] == Mark::transpose) std::swap(xa, xb);
                            if (xa == rb && xb == ra) ++conj;
                        }
                        eprod *= mom_off.value(n, conj);
                    }
                    if (eprod == Complex(0.0, 0.0)) break;
                }
                acc.add(dprod * eprod);
            }
            int k = 0;
            while (k < 2 * m && ++psi[k] == N) psi[k++] = 0;
            if (k == 2 * m) break;
        }
        return w.coefficient * acc.sum * std::pow(static_cast<double>(N), -0.5 * m);
    };

    // Cumulant from joint moments by Mobius inversion over the r traces.
    KahanSum total;
    enumerate_partitions(r, [&](const SetPartition& rho) {
        int nb = rho.block_count();
        double mu = (nb % 2 == 0) ? -1.0 : 1.0;
        for (int k = 2; k < nb; ++k) mu *= k;
        Complex prod{1.0, 0.0};
        for (const auto& block : rho.blocks()) {
            std::vector<Monomial> part;
            part.reserve(block.size());
            for (Label k : block) part.push_back(monomials[k - 1]);
            prod *= trace_moment(part);
        }
        total.add(mu * prod);
    });
    return total.sum;
}

Complex exact_cumulant_poly(int r, const PolynomialSpec& spec, const EntryCumulantModel& model,
                            const DeterministicSet& detset, int N,
                            const ExpansionOptions& opts) {
    if (r < 1) throw ShapeError("exact_cumulant_poly: order must be >= 1");
    if (spec.monomials.empty()) throw ShapeError("exact_cumulant_poly: empty polynomial");
    std::size_t t = spec.monomials.size();
    std::vector<std::size_t> pick(r, 0);
    KahanSum acc;
    while (true) {
        std::vector<Monomial> chosen;
        chosen.reserve(r);
        for (int k = 0; k < r; ++k) chosen.push_back(spec.monomials[pick[k]]);
        Complex v;
        if (model.tag() == EnsembleTag::wigner_custom)
            v = exact_cumulant(chosen, model, detset, N, opts).value;
        else
            v = exact_cumulant_gaussian(chosen, detset, N, model.tag(), opts).value;
        acc.add(v);
        int k = 0;
        while (k < r && ++pick[k] == t) pick[k++] = 0;
        if (k == r) break;
    }
    return acc.sum;
}

BoundVerdict verify_bound(const std::vector<Monomial>& monomials,
                          const EntryCumulantModel& model, const DeterministicSet& detset, int N,
                          const ExpansionOptions& opts) {
    FlatWord w = flatten(monomials);
    double norms = 1.0;
    for (const auto& name : w.d_names) norms *= detset.norm(name);
    Complex value;
    if (model.tag() == EnsembleTag::wigner_custom)
        value = exact_cumulant(monomials, model, detset, N, opts).value;
    else
        value = exact_cumulant_gaussian(monomials, detset, N, model.tag(), opts).value;
    BoundVerdict v;
    v.N = N;
    v.r = static_cast<int>(monomials.size());
    v.m = w.m;
    switch (model.tag()) {
        case EnsembleTag::gue:
            v.kind = "gue";
            v.scaled_cumulant = std::abs(value) * std::pow(static_cast<double>(N), v.r - 2);
            v.bound = double_factorial(w.m).as_double() * norms;
            break;
        case EnsembleTag::goe:
            v.kind = "goe";
            v.scaled_cumulant = std::abs(value) * std::pow(static_cast<double>(N), v.r - 2);
            v.bound = std::pow(2.0, 0.5 * w.m) * double_factorial(w.m).as_double() * norms;
            break;
        case EnsembleTag::wigner_custom: {
            v.kind = "wigner";
            v.scaled_cumulant = std::abs(value) * std::pow(static_cast<double>(N), 0.5 * v.r - 1);
            double mfact = factorial(w.m).as_double();
            v.bound = bell_number(w.m).as_double() * std::pow(2.0, w.m - 1) * mfact * mfact *
                      integer_partition_count(w.m).as_double() *
                      integer_partition_count(w.m / 2).as_double() * norms;
            break;
        }
    }
    v.pass = v.scaled_cumulant <= v.bound * (1.0 + 1e-9);
    return v;
}

std::string ledger_csv(const ExactCumulantResult& result) {
    std::ostringstream os;
    os << "pi,tau,s0_re,s0_im,k_re,k_im,contrib_re,contrib_im\n";
    os.precision(17);
    for (const LedgerRow& row : result.ledger) {
        os << '"' << row.pi << "\",\"" << row.tau << "\"," << row.s0.real() << ','
           << row.s0.imag() << ',' << row.cumulant_product.real() << ','
           << row.cumulant_product.imag() << ',' << row.contribution.real() << ','
           << row.contribution.imag() << '\n';
    }
    return os.str();
}

}  // namespace rmtcum
