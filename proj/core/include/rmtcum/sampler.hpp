#pragma once

#include <cstdint>
#include <string>

#include "rmtcum/deterministic.hpp"
#include "rmtcum/expansion.hpp"
#include "rmtcum/polynomial.hpp"

namespace rmtcum {

/// Entry law for the strict upper triangle / diagonal of a Wigner matrix.
/// All builtins are symmetric with mean zero; the second moment need not be
/// 1 (the uniform law has variance 1/12).
struct EntryDistribution {
    enum class Kind {
        gaussian_real,
        gaussian_complex,
        uniform,               // uniform(-1/2, 1/2)
        rademacher,            // +-1 with equal probability
        symmetrized_exponential  // Laplace with unit rate
    };
    Kind kind = Kind::gaussian_real;
    double scale = 1.0;

    static EntryDistribution from_name(const std::string& name, double scale = 1.0);
    std::string name() const;
    bool is_complex() const { return kind == Kind::gaussian_complex; }
};

/// Draws one self-adjoint N x N matrix with the ensemble's normalization:
/// entries of order N^{-1/2}.  For gue/goe the distribution argument is
/// ignored; for wigner the off-diagonal and diagonal both follow dist.
Matrix sample_ensemble(int n, EnsembleTag tag, const EntryDistribution& dist,
                       std::uint64_t seed, std::uint64_t substream);

/// Entry cumulant tables matching sample_ensemble, for exact cross-checks.
EntryCumulantModel entry_model_for(EnsembleTag tag, const EntryDistribution& dist,
                                   int max_order = 12);

/// Tr P(X, D) on one sample: symbols[i-1] binds X_i.  Words of length one
/// or two are evaluated in O(N^2) without forming the product matrix.
Complex trace_poly(const PolynomialSpec& spec, const std::vector<Matrix>& symbols,
                   const DeterministicSet& detset);

}  // namespace rmtcum
