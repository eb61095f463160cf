#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>

#include "rmtcum/errors.hpp"

namespace rmtcum {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Largest singular value, via power iteration on A*A with a deterministic
/// start vector; converges to 1e-8 relative or throws NumericError.
double operator_norm(const Matrix& a);

/// Named deterministic matrices of one common dimension, with cached
/// operator norms and entrywise-absolute-value operator norms.
class DeterministicSet {
  public:
    DeterministicSet() = default;
    explicit DeterministicSet(int n) : n_(n) {}

    int dimension() const { return n_; }
    void add(const std::string& name, Matrix m);
    bool has(const std::string& name) const { return entries_.count(name) != 0; }
    /// Empty name resolves to the identity.
    const Matrix& get(const std::string& name) const;
    double norm(const std::string& name) const;
    double abs_norm(const std::string& name) const;
    std::vector<std::string> names() const;

  private:
    struct Entry {
        Matrix matrix;
        double norm;
        double abs_norm;
    };
    int n_ = 0;
    std::map<std::string, Entry> entries_;
    mutable Matrix identity_;  // lazily built
};

/// Built-in deterministic matrices: "identity", "upper-bidiagonal-ones"
/// (ones on the diagonal and superdiagonal, operator norm <= 2),
/// "diag-alternating-signs", or "file:<path>" for the CSV format below.
Matrix builtin_deterministic(const std::string& name, int n);

/// CSV matrix files: first line "N", then N rows of N comma-separated
/// complex entries written as "a+bi" (plain reals also accepted).
Matrix load_matrix_csv(const std::string& path, int expected_n);
void save_matrix_csv(const std::string& path, const Matrix& m);

}  // namespace rmtcum
