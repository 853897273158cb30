#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fuchsdim {

// Mantissa width in bits. Every value created in one computation carries the
// session's precision; mixed operations produce the wider of the two.
class Precision {
public:
    static constexpr long kMinBits = 64;
    static constexpr long kDefaultBits = 512;

    constexpr Precision() = default;
    explicit Precision(long bits);

    constexpr long bits() const { return bits_; }
    constexpr auto operator<=>(const Precision&) const = default;

    // 2^(-bits/2 + shift), the equality tolerance exponent used across the library.
    long half_tolerance_exponent(long shift = 0) const { return -bits_ / 2 + shift; }

private:
    long bits_ = kDefaultBits;
};

// Arbitrary-precision binary floating point value (MPFR, round-to-nearest).
class BigReal {
public:
    BigReal();
    BigReal(long value, Precision prec);
    BigReal(int value, Precision prec) : BigReal(static_cast<long>(value), prec) {}
    BigReal(double value, Precision prec);

    // Accepts decimal ("1.25e3") and binary-exponent hex ("0x1.4p+10") notation.
    static BigReal parse(std::string_view text, Precision prec);
    static BigReal pow2(long exponent, Precision prec);
    static BigReal pi(Precision prec);
    static BigReal infinity(Precision prec, int sign = 1);

    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    Precision precision() const;

    BigReal& operator+=(const BigReal& rhs);
    BigReal& operator-=(const BigReal& rhs);
    BigReal& operator*=(const BigReal& rhs);
    BigReal& operator/=(const BigReal& rhs);
    BigReal& operator+=(long rhs);
    BigReal& operator-=(long rhs);
    BigReal& operator*=(long rhs);
    BigReal& operator/=(long rhs);

    BigReal operator-() const;

    friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
    friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
    friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
    friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
    friend BigReal operator+(BigReal lhs, long rhs) { return lhs += rhs; }
    friend BigReal operator-(BigReal lhs, long rhs) { return lhs -= rhs; }
    friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
    friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }
    friend BigReal operator+(long lhs, BigReal rhs) { return rhs += lhs; }
    friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
    friend BigReal operator-(long lhs, const BigReal& rhs);
    friend BigReal operator/(long lhs, const BigReal& rhs);

    friend bool operator==(const BigReal& a, const BigReal& b);
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
    friend bool operator==(const BigReal& a, long b);
    friend std::partial_ordering operator<=>(const BigReal& a, long b);
    friend bool operator==(const BigReal& a, double b);
    friend std::partial_ordering operator<=>(const BigReal& a, double b);

    int sign() const;
    bool is_zero() const;
    bool is_finite() const;
    bool is_nan() const;
    bool is_inf() const;

    // Binary exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
    long exponent() const;

    // Multiply by 2^e exactly.
    BigReal ldexp(long e) const;

    double to_double() const;
    // Rounded towards -infinity; throws if out of range.
    long to_long_floor() const;

    std::string to_decimal(int significant_digits = 40) const;
    // Exact hexadecimal significand with binary exponent, e.g. "0x1.8p+3".
    std::string to_binary() const;

    const mpfr_t& raw() const { return value_; }
    mpfr_t& raw() { return value_; }

private:
    explicit BigReal(Precision prec);
    void widen_to(mpfr_prec_t prec);

    mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal asinh(const BigReal& x);
BigReal acosh(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow(const BigReal& base, const BigReal& exponent);
BigReal floor(const BigReal& x);
BigReal hypot(const BigReal& x, const BigReal& y);
const BigReal& min(const BigReal& a, const BigReal& b);
const BigReal& max(const BigReal& a, const BigReal& b);

// floor(log2(|a - b| / max(|a|, |b|))); LONG_MIN when a == b.
long relative_gap_log2(const BigReal& a, const BigReal& b);

} // namespace fuchsdim
