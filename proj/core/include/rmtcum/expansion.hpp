#pragma once

#include <string>
#include <vector>

#include "rmtcum/moment_cumulant.hpp"
#include "rmtcum/polynomial.hpp"
#include "rmtcum/spi.hpp"

namespace rmtcum {

enum class EnsembleTag { gue, goe, wigner_custom };

/// Cumulants of the (unscaled) matrix entries of one self-adjoint random
/// matrix family: an off-diagonal table and a diagonal table, plus the
/// subexponential constant C of the growth bound |K_r| <= C r!.
class EntryCumulantModel {
  public:
    /// Complex normal off-diagonal entries (unit absolute variance),
    /// standard normal diagonal.
    static EntryCumulantModel gue(int max_order = 12);
    /// Standard normal off-diagonal, variance-2 diagonal, all real.
    static EntryCumulantModel goe(int max_order = 12);
    /// Custom real or complex entry law.
    static EntryCumulantModel wigner(MomentCumulantTable offdiag, MomentCumulantTable diag,
                                     double subexp_constant);
    /// Real entries uniform on (-1/2, 1/2), on and off the diagonal.
    static EntryCumulantModel uniform_wigner(int max_order = 12);

    EnsembleTag tag() const { return tag_; }
    bool real_entries() const {
        return offdiag_.mode() == MomentCumulantTable::Mode::real;
    }
    int max_order() const { return offdiag_.max_order(); }
    double subexp_constant() const { return subexp_constant_; }
    Complex offdiag(int order, int conj_count) const { return offdiag_.value(order, conj_count); }
    Complex diag(int order) const { return diag_.value(order, 0); }
    const MomentCumulantTable& offdiag_table() const { return offdiag_; }
    const MomentCumulantTable& diag_table() const { return diag_; }

  private:
    EnsembleTag tag_ = EnsembleTag::wigner_custom;
    MomentCumulantTable offdiag_;
    MomentCumulantTable diag_;
    double subexp_constant_ = 1.0;
};

/// One retained term of the expansion, for audit output.
struct LedgerRow {
    std::string pi;
    std::string tau;
    Complex s0;
    Complex cumulant_product;
    Complex contribution;
};

struct ExactCumulantResult {
    Complex value{0.0, 0.0};
    long contributing_terms = 0;
    std::vector<LedgerRow> ledger;
};

struct ExpansionOptions {
    int max_m = 6;  // total word length budget for the partition enumeration
    SpiOptions spi;
    bool keep_ledger = false;
};

/// The joint cumulant of the matrix entries referenced by the positions of
/// tau_block, given that index coincidences follow pi.  Zero when the block
/// mixes symbols or entry locations.
Complex entry_cumulant_for(const SetPartition& pi, const std::vector<Label>& tau_block,
                           const std::vector<Monomial>& monomials,
                           const EntryCumulantModel& model);

/// K_r(Tr Y_1, ..., Tr Y_r) for a general Wigner entry model, by the full
/// partition expansion over the signed word positions.
ExactCumulantResult exact_cumulant(const std::vector<Monomial>& monomials,
                                   const EntryCumulantModel& model,
                                   const DeterministicSet& detset, int N,
                                   const ExpansionOptions& opts = {});

/// Gaussian specialization: GUE by the pairing sum, GOE by the 2^m
/// transpose expansion over GUE terms (guarded at m <= 10).
ExactCumulantResult exact_cumulant_gaussian(const std::vector<Monomial>& monomials,
                                            const DeterministicSet& detset, int N,
                                            EnsembleTag ensemble,
                                            const ExpansionOptions& opts = {});

struct OracleOptions {
    int max_m = 4;
    int max_n = 6;
};

/// Independent ground truth: joint trace moments by full enumeration of the
/// index maps, entry moments from the model, cumulant recovered by Mobius
/// inversion over the trace arguments.
Complex bruteforce_cumulant_oracle(const std::vector<Monomial>& monomials,
                                   const EntryCumulantModel& model,
                                   const DeterministicSet& detset, int N,
                                   const OracleOptions& opts = {});

/// Multilinear expansion of K_r(Tr P, ..., Tr P) over the monomials of P.
/// Uses the Gaussian path for gue/goe models, the general path otherwise.
Complex exact_cumulant_poly(int r, const PolynomialSpec& spec, const EntryCumulantModel& model,
                            const DeterministicSet& detset, int N,
                            const ExpansionOptions& opts = {});

struct BoundVerdict {
    std::string kind;  // "gue", "goe" or "wigner"
    int N = 0;
    int r = 0;
    int m = 0;
    double scaled_cumulant = 0.0;  // |K_r| times the normalizing power of N
    double bound = 0.0;
    bool pass = false;
};

/// Checks the exact cumulant of the given trace arguments against the
/// closed-form combinatorial bound for the model's ensemble.
BoundVerdict verify_bound(const std::vector<Monomial>& monomials,
                          const EntryCumulantModel& model, const DeterministicSet& detset, int N,
                          const ExpansionOptions& opts = {});

/// Audit ledger as CSV ("pi,tau,s0_re,s0_im,k_re,k_im,contrib_re,contrib_im").
std::string ledger_csv(const ExactCumulantResult& result);

}  // namespace rmtcum
