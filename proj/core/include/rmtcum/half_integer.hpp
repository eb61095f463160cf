#pragma once

#include <compare>
#include <string>

namespace rmtcum {

/// Exact multiple of 1/2, stored as a count of halves.  Used for the graph
/// exponent t(G), which is a sum of leaf weights 1 and 1/2.
class HalfInteger {
  public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger whole(long n) { return HalfInteger(2 * n); }
    static constexpr HalfInteger halves(long h) { return HalfInteger(h); }

    constexpr long numerator_halves() const { return halves_; }
    constexpr double as_double() const { return 0.5 * static_cast<double>(halves_); }
    constexpr bool is_integer() const { return halves_ % 2 == 0; }

    constexpr HalfInteger& operator+=(HalfInteger o) {
        halves_ += o.halves_;
        return *this;
    }
    constexpr HalfInteger& operator-=(HalfInteger o) {
        halves_ -= o.halves_;
        return *this;
    }
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return a += b; }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return a -= b; }
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    std::string str() const {
        if (halves_ % 2 == 0) return std::to_string(halves_ / 2);
        return std::to_string(halves_) + "/2";
    }

  private:
    explicit constexpr HalfInteger(long h) : halves_(h) {}
    long halves_ = 0;
};

}  // namespace rmtcum
