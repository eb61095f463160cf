#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rmtcum/partition.hpp"

namespace rmtcum {

using Complex = std::complex<double>;

/// One letter of a monomial in normal form: a random symbol X_{x_index}
/// (optionally transposed) followed by a deterministic factor.  An empty
/// deterministic name stands for the identity.
struct Slot {
    int x_index = 0;
    Mark mark = Mark::plain;
    std::string d_name;
    bool operator==(const Slot&) const = default;
};

/// A trace monomial coefficient * Tr(X D X D ...) in normal form: the word
/// starts with a random letter and alternates slots.
struct Monomial {
    std::vector<Slot> slots;
    Complex coefficient{1.0, 0.0};
    bool operator==(const Monomial&) const = default;
};

/// A polynomial P(X, D): a sum of trace monomials sharing symbol tables.
struct PolynomialSpec {
    std::vector<Monomial> monomials;

    /// Max word length over the monomials.
    int degree() const {
        int m = 0;
        for (const auto& mono : monomials) m = std::max<int>(m, mono.slots.size());
        return m;
    }
    bool operator==(const PolynomialSpec&) const = default;
};

/// Word lengths of a list of monomials, in order.
inline std::vector<int> monomial_lengths(const std::vector<Monomial>& monomials) {
    std::vector<int> m_vec;
    m_vec.reserve(monomials.size());
    for (const auto& mono : monomials) m_vec.push_back(static_cast<int>(mono.slots.size()));
    return m_vec;
}

}  // namespace rmtcum
