#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rmtcum {

/// Exact nonnegative integers of arbitrary size.  Bell numbers and double
/// factorials overflow 64 bits quickly (n!! already at n ~ 33), and the
/// combinatorial bound checks must be exact, so counts are kept as bignums.
class BigInt {
  public:
    BigInt() : limbs_{0} {}
    BigInt(std::uint64_t v);

    BigInt operator+(const BigInt&) const;
    BigInt operator*(const BigInt&) const;
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    bool operator==(const BigInt&) const = default;
    bool operator<=(const BigInt&) const;

    std::string str() const;
    double as_double() const;

  private:
    // base 2^32, little endian, no leading zero limb (except the value 0)
    std::vector<std::uint32_t> limbs_;
    void trim();
};

/// Number of partitions of an n-element set.
BigInt bell_number(int n);
/// Number of integer partitions of n (p(0) = 1).
BigInt integer_partition_count(int n);
/// n!! with the convention (-1)!! = 0!! = 1.
BigInt double_factorial(int n);
BigInt factorial(int n);

}  // namespace rmtcum
