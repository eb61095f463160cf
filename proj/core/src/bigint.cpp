#include "rmtcum/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmtcum {

BigInt::BigInt(std::uint64_t v) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    trim();
}

void BigInt::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    r.limbs_.assign(std::max(limbs_.size(), o.limbs_.size()) + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
        std::uint64_t s = carry;
        if (i < limbs_.size()) s += limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        r.limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r.trim();
    return r;
}

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = r.limbs_[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        r.limbs_[i + o.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    return r;
}

bool BigInt::operator<=(const BigInt& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
    }
    return true;
}

std::string BigInt::str() const {
    // repeated division by 10^9
    std::vector<std::uint32_t> work(limbs_.rbegin(), limbs_.rend());  // big endian
    std::string out;
    while (!(work.size() == 1 && work[0] == 0)) {
        std::uint64_t rem = 0;
        std::vector<std::uint32_t> quot;
        for (std::uint32_t limb : work) {
            std::uint64_t cur = (rem << 32) | limb;
            std::uint32_t q = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
            if (!quot.empty() || q != 0) quot.push_back(q);
        }
        std::string chunk = std::to_string(rem);
        if (quot.empty()) {
            out = chunk + out;
            break;
        }
        out = std::string(9 - chunk.size(), '0') + chunk + out;
        work = std::move(quot);
    }
    return out.empty() ? "0" : out;
}

double BigInt::as_double() const {
    double r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
    return r;
}

BigInt bell_number(int n) {
    if (n < 0) throw std::invalid_argument("bell_number: n must be >= 0");
    // Bell triangle
    std::vector<BigInt> row{BigInt(1)};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> next;
        next.reserve(i + 1);
        next.push_back(row.back());
        for (int j = 0; j < i; ++j) next.push_back(next.back() + row[j]);
        row = std::move(next);
    }
    return row.front();
}

BigInt integer_partition_count(int n) {
    if (n < 0) throw std::invalid_argument("integer_partition_count: n must be >= 0");
    // p(k, j): partitions of k into parts <= j
    std::vector<std::vector<BigInt>> p(n + 1, std::vector<BigInt>(n + 1, BigInt(0)));
    for (int j = 0; j <= n; ++j) p[0][j] = BigInt(1);
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) {
            p[k][j] = p[k][j - 1];
            if (k >= j) p[k][j] += p[k - j][j];
        }
    }
    return p[n][n];
}

BigInt double_factorial(int n) {
    if (n < -1) throw std::invalid_argument("double_factorial: n must be >= -1");
    BigInt r(1);
    for (int k = n; k > 1; k -= 2) r *= BigInt(static_cast<std::uint64_t>(k));
    return r;
}

BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: n must be >= 0");
    BigInt r(1);
    for (int k = 2; k <= n; ++k) r *= BigInt(static_cast<std::uint64_t>(k));
    return r;
}

}  // namespace rmtcum
