#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace chartdist {

/// Exact rational number over 64-bit integers, always kept in lowest terms
/// with a positive denominator. Arithmetic is overflow-checked and throws
/// std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    /// 2^-k.
    static Rational pow2_neg(unsigned k);

    /// If the value is 2^-k for some k >= 0, returns k.
    std::optional<unsigned> dyadic_exponent() const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    /// "p/q" in lowest terms; integers print without a denominator.
    std::string str() const;

    /// Accepts "p/q", "p" and optional surrounding whitespace.
    static Rational parse(std::string_view text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace chartdist
