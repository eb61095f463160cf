#include "rmtcum/deterministic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace rmtcum {

double operator_norm(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("operator_norm: matrix is not square");
    int n = static_cast<int>(a.rows());
    if (n == 0) return 0.0;
    Matrix ata = a.adjoint() * a;
    // Deterministic start: the all-ones vector plus a small ramp so we do not
    // start orthogonal to the top eigenvector of a structured matrix.
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(1.0 + 1e-3 * i, 0.0);
    v.normalize();
    double prev = -1.0;
    for (int it = 0; it < 100000; ++it) {
        Eigen::VectorXcd w = ata * v;
        double lambda = w.norm();
        if (lambda == 0.0) return 0.0;  // nilpotent-free zero case: A*A v = 0
        v = w / lambda;
        if (prev >= 0.0 && std::abs(lambda - prev) <= 1e-10 * std::max(lambda, 1e-300))
            return std::sqrt(lambda);
        prev = lambda;
    }
    throw NumericError("operator_norm: power iteration failed to converge");
}

void DeterministicSet::add(const std::string& name, Matrix m) {
    if (name.empty()) throw ConfigError("DeterministicSet: empty matrix name is reserved");
    if (m.rows() != m.cols()) throw ShapeError("DeterministicSet: matrix is not square");
    if (n_ == 0) n_ = static_cast<int>(m.rows());
    if (m.rows() != n_)
        throw ShapeError("DeterministicSet: dimension mismatch for \"" + name + "\"");
    Entry e;
    e.norm = operator_norm(m);
    e.abs_norm = operator_norm(m.cwiseAbs().cast<Complex>());
    e.matrix = std::move(m);
    entries_[name] = std::move(e);
}

const Matrix& DeterministicSet::get(const std::string& name) const {
    if (name.empty()) {
        if (identity_.rows() != n_) identity_ = Matrix::Identity(n_, n_);
        return identity_;
    }
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw ConfigError("DeterministicSet: unbound matrix symbol \"" + name + "\"");
    return it->second.matrix;
}

double DeterministicSet::norm(const std::string& name) const {
    if (name.empty()) return 1.0;
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw ConfigError("DeterministicSet: unbound matrix symbol \"" + name + "\"");
    return it->second.norm;
}

double DeterministicSet::abs_norm(const std::string& name) const {
    if (name.empty()) return 1.0;
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw ConfigError("DeterministicSet: unbound matrix symbol \"" + name + "\"");
    return it->second.abs_norm;
}

std::vector<std::string> DeterministicSet::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
}

namespace {

Complex parse_complex(std::string s) {
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    if (s.empty()) throw ConfigError("matrix file: empty entry");
    if (s.back() != 'i' && s.back() != 'I') return Complex(std::stod(s), 0.0);
    s.pop_back();  // drop the i
    // Split at the last +/- that is not a leading sign and not an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (split == std::string::npos) return Complex(0.0, imag_of(s));
    return Complex(std::stod(s.substr(0, split)), imag_of(s.substr(split)));
}

}  // namespace

Matrix load_matrix_csv(const std::string& path, int expected_n) {
    std::ifstream in(path);
    if (!in) throw ConfigError("matrix file: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("matrix file: empty file " + path);
    int n = 0;
    try {
        n = std::stoi(line);
    } catch (const std::exception&) {
        throw ConfigError("matrix file: first line of " + path + " must be the dimension");
    }
    if (n <= 0) throw ConfigError("matrix file: nonpositive dimension in " + path);
    if (expected_n > 0 && n != expected_n)
        throw ConfigError("matrix file: " + path + " has dimension " + std::to_string(n) +
                          ", expected " + std::to_string(expected_n));
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ConfigError("matrix file: " + path + " is missing row " + std::to_string(i + 1));
        std::istringstream ls(line);
        std::string cell;
        int j = 0;
        while (std::getline(ls, cell, ',')) {
            if (j >= n) throw ConfigError("matrix file: " + path + " row has too many entries");
            m(i, j++) = parse_complex(cell);
        }
        if (j != n)
            throw ConfigError("matrix file: " + path + " row " + std::to_string(i + 1) + " has " +
                              std::to_string(j) + " entries, expected " + std::to_string(n));
    }
    return m;
}

void save_matrix_csv(const std::string& path, const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("save_matrix_csv: matrix is not square");
    std::ofstream out(path);
    if (!out) throw ConfigError("matrix file: cannot write " + path);
    out << m.rows() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            const Complex& z = m(i, j);
            out << z.real();
            if (z.imag() != 0.0) out << (z.imag() >= 0 ? "+" : "") << z.imag() << 'i';
        }
        out << '\n';
    }
}

Matrix builtin_deterministic(const std::string& name, int n) {
    if (n < 1) throw ConfigError("builtin_deterministic: dimension must be >= 1");
    if (name == "identity") return Matrix::Identity(n, n);
    if (name == "upper-bidiagonal-ones") {
        Matrix m = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = 1.0;
            if (i + 1 < n) m(i, i + 1) = 1.0;
        }
        return m;
    }
    if (name == "diag-alternating-signs") {
        Matrix m = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
        return m;
    }
    if (name.rfind("file:", 0) == 0) return load_matrix_csv(name.substr(5), n);
    throw ConfigError("builtin_deterministic: unknown matrix name \"" + name + "\"");
}

}  // namespace rmtcum
