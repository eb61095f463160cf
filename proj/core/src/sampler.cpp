#include "rmtcum/sampler.hpp"

#include <cmath>

#include "rmtcum/rng.hpp"

namespace rmtcum {

EntryDistribution EntryDistribution::from_name(const std::string& name, double scale) {
    EntryDistribution d;
    d.scale = scale;
    if (name == "gaussian-real")
        d.kind = Kind::gaussian_real;
    else if (name == "gaussian-complex")
        d.kind = Kind::gaussian_complex;
    else if (name == "uniform")
        d.kind = Kind::uniform;
    else if (name == "rademacher")
        d.kind = Kind::rademacher;
    else if (name == "symmetrized-exponential")
        d.kind = Kind::symmetrized_exponential;
    else
        throw ConfigError("EntryDistribution: unknown name \"" + name + "\"");
    return d;
}

std::string EntryDistribution::name() const {
    switch (kind) {
        case Kind::gaussian_real: return "gaussian-real";
        case Kind::gaussian_complex: return "gaussian-complex";
        case Kind::uniform: return "uniform";
        case Kind::rademacher: return "rademacher";
        case Kind::symmetrized_exponential: return "symmetrized-exponential";
    }
    return "?";
}

namespace {

double draw_real(const EntryDistribution& d, std::mt19937_64& rng) {
    switch (d.kind) {
        case EntryDistribution::Kind::gaussian_real: {
            std::normal_distribution<double> g(0.0, 1.0);
            return d.scale * g(rng);
        }
        case EntryDistribution::Kind::uniform: {
            std::uniform_real_distribution<double> u(-0.5, 0.5);
            return d.scale * u(rng);
        }
        case EntryDistribution::Kind::rademacher: {
            return d.scale * ((rng() & 1) ? 1.0 : -1.0);
        }
        case EntryDistribution::Kind::symmetrized_exponential: {
            std::exponential_distribution<double> e(1.0);
            double sign = (rng() & 1) ? 1.0 : -1.0;
            return d.scale * sign * e(rng);
        }
        case EntryDistribution::Kind::gaussian_complex:
            break;
    }
    throw ConfigError("EntryDistribution: complex law used where a real draw is required");
}

Complex draw_complex_unit(std::mt19937_64& rng) {
    // (a + ib)/sqrt(2) with a, b standard normal: E|z|^2 = 1.
    std::normal_distribution<double> g(0.0, 1.0);
    double a = g(rng);
    double b = g(rng);
    return Complex(a, b) / std::sqrt(2.0);
}

}  // namespace

Matrix sample_ensemble(int n, EnsembleTag tag, const EntryDistribution& dist,
                       std::uint64_t seed, std::uint64_t substream) {
    if (n < 1) throw ShapeError("sample_ensemble: dimension must be >= 1");
    std::mt19937_64 rng = substream_rng(seed, substream);
    double root_n = std::sqrt(static_cast<double>(n));
    Matrix x(n, n);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        // diagonal entry
        switch (tag) {
            case EnsembleTag::gue: x(i, i) = g(rng) / root_n; break;
            case EnsembleTag::goe: x(i, i) = std::sqrt(2.0) * g(rng) / root_n; break;
            case EnsembleTag::wigner_custom:
                if (dist.is_complex())
                    throw ConfigError("sample_ensemble: diagonal entries must be real");
                x(i, i) = draw_real(dist, rng) / root_n;
                break;
        }
        for (int j = i + 1; j < n; ++j) {
            Complex z;
            switch (tag) {
                case EnsembleTag::gue: z = draw_complex_unit(rng) / root_n; break;
                case EnsembleTag::goe: z = g(rng) / root_n; break;
                case EnsembleTag::wigner_custom:
                    z = dist.is_complex() ? dist.scale * draw_complex_unit(rng) / root_n
                                          : Complex(draw_real(dist, rng) / root_n, 0.0);
                    break;
            }
            x(i, j) = z;
            x(j, i) = std::conj(z);
        }
    }
    return x;
}

EntryCumulantModel entry_model_for(EnsembleTag tag, const EntryDistribution& dist,
                                   int max_order) {
    if (tag == EnsembleTag::gue) return EntryCumulantModel::gue(max_order);
    if (tag == EnsembleTag::goe) return EntryCumulantModel::goe(max_order);
    std::vector<Complex> moments(max_order, 0.0);
    for (int k = 2; k <= max_order; k += 2) {
        double mk = 0.0;
        switch (dist.kind) {
            case EntryDistribution::Kind::gaussian_real: {
                // (k-1)!!
                mk = 1.0;
                for (int j = k - 1; j > 1; j -= 2) mk *= j;
                break;
            }
            case EntryDistribution::Kind::uniform:
                mk = 1.0 / (std::pow(2.0, k) * (k + 1));
                break;
            case EntryDistribution::Kind::rademacher:
                mk = 1.0;
                break;
            case EntryDistribution::Kind::symmetrized_exponential: {
                // E|x|^k = k! for the unit-rate Laplace law
                mk = 1.0;
                for (int j = 2; j <= k; ++j) mk *= j;
                break;
            }
            case EntryDistribution::Kind::gaussian_complex:
                throw ConfigError("entry_model_for: complex wigner entry law not supported");
        }
        moments[k - 1] = mk * std::pow(dist.scale, k);
    }
    MomentCumulantTable cum =
        cumulants_from_moments(MomentCumulantTable::real_table(std::move(moments)));
    double c = 1.0, fact = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        fact *= k;
        c = std::max(c, std::abs(cum.value(k, 0)) / fact);
    }
    return EntryCumulantModel::wigner(cum, cum, c);
}

Complex trace_poly(const PolynomialSpec& spec, const std::vector<Matrix>& symbols,
                   const DeterministicSet& detset) {
    if (spec.monomials.empty()) throw ShapeError("trace_poly: empty polynomial");
    auto symbol = [&](int i) -> const Matrix& {
        if (i < 1 || i > static_cast<int>(symbols.size()))
            throw ConfigError("trace_poly: unresolved random symbol X_" + std::to_string(i));
        return symbols[i - 1];
    };
    Complex total{0.0, 0.0};
    for (const Monomial& mono : spec.monomials) {
        // Collect the factor list: X (possibly transposed) then the optional
        // deterministic matrix per slot.
        std::vector<std::pair<const Matrix*, bool>> factors;  // (matrix, transpose)
        for (const Slot& s : mono.slots) {
            factors.push_back({&symbol(s.x_index), s.mark == Mark::transpose});
            if (!s.d_name.empty()) factors.push_back({&detset.get(s.d_name), false});
        }
        Complex tr;
        if (factors.size() == 1) {
            const auto& [m, t] = factors[0];
            tr = m->trace();  // transpose does not change the trace
        } else if (factors.size() == 2) {
            // Tr(AB) = sum_ij A_ij B_ji in O(N^2)
            const auto& [ma, ta] = factors[0];
            const auto& [mb, tb] = factors[1];
            Complex s{0.0, 0.0};
            int n = static_cast<int>(ma->rows());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Complex a = ta ? (*ma)(j, i) : (*ma)(i, j);
                    Complex b = tb ? (*mb)(i, j) : (*mb)(j, i);
                    s += a * b;
                }
            tr = s;
        } else {
            Matrix prod = factors[0].second ? Matrix(factors[0].first->transpose())
                                            : *factors[0].first;
            for (std::size_t k = 1; k < factors.size(); ++k) {
                if (factors[k].second)
                    prod = prod * factors[k].first->transpose();
                else
                    prod = prod * (*factors[k].first);
            }
            tr = prod.trace();
        }
        total += mono.coefficient * tr;
    }
    return total;
}

}  // namespace rmtcum
