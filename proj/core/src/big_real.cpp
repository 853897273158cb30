#include "fuchsdim/big_real.hpp"

#include <climits>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace fuchsdim {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

mpfr_prec_t wider(const mpfr_t& a, const mpfr_t& b) {
    return std::max(mpfr_get_prec(a), mpfr_get_prec(b));
}

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
    BigReal out = x;
    fn(out.raw(), x.raw(), kRound);
    return out;
}

} // namespace

Precision::Precision(long bits) : bits_(bits) {
    if (bits < kMinBits) {
        throw std::invalid_argument("precision must be at least 64 bits");
    }
    if (bits > MPFR_PREC_MAX / 2) {
        throw std::invalid_argument("precision exceeds the supported maximum");
    }
}

BigReal::BigReal(Precision prec) {
    mpfr_init2(value_, prec.bits());
}

BigReal::BigReal() : BigReal(Precision{Precision::kMinBits}) {
    mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, Precision prec) : BigReal(prec) {
    mpfr_set_si(value_, value, kRound);
}

BigReal::BigReal(double value, Precision prec) : BigReal(prec) {
    mpfr_set_d(value_, value, kRound);
}

BigReal BigReal::parse(std::string_view text, Precision prec) {
    BigReal out(prec);
    std::string buf(text);
    if (mpfr_set_str(out.value_, buf.c_str(), 0, kRound) != 0) {
        throw std::invalid_argument("cannot parse number: " + buf);
    }
    return out;
}

BigReal BigReal::pow2(long exponent, Precision prec) {
    BigReal out(prec);
    mpfr_set_ui_2exp(out.value_, 1, exponent, kRound);
    return out;
}

BigReal BigReal::pi(Precision prec) {
    BigReal out(prec);
    mpfr_const_pi(out.value_, kRound);
    return out;
}

BigReal BigReal::infinity(Precision prec, int sign) {
    BigReal out(prec);
    mpfr_set_inf(out.value_, sign);
    return out;
}

BigReal::BigReal(const BigReal& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept {
    // Steal the limbs; leave `other` as a valid minimal-precision zero.
    *value_ = *other.value_;
    mpfr_init2(other.value_, Precision::kMinBits);
    mpfr_set_zero(other.value_, 1);
}

BigReal& BigReal::operator=(const BigReal& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, kRound);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
    if (this != &other) {
        mpfr_swap(value_, other.value_);
    }
    return *this;
}

BigReal::~BigReal() {
    mpfr_clear(value_);
}

Precision BigReal::precision() const {
    return Precision{static_cast<long>(mpfr_get_prec(value_))};
}

void BigReal::widen_to(mpfr_prec_t prec) {
    if (prec > mpfr_get_prec(value_)) {
        mpfr_prec_round(value_, prec, kRound);
    }
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
    widen_to(wider(value_, rhs.value_));
    mpfr_add(value_, value_, rhs.value_, kRound);
    return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
    widen_to(wider(value_, rhs.value_));
    mpfr_sub(value_, value_, rhs.value_, kRound);
    return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
    widen_to(wider(value_, rhs.value_));
    mpfr_mul(value_, value_, rhs.value_, kRound);
    return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
    widen_to(wider(value_, rhs.value_));
    mpfr_div(value_, value_, rhs.value_, kRound);
    return *this;
}

BigReal& BigReal::operator+=(long rhs) {
    mpfr_add_si(value_, value_, rhs, kRound);
    return *this;
}

BigReal& BigReal::operator-=(long rhs) {
    mpfr_sub_si(value_, value_, rhs, kRound);
    return *this;
}

BigReal& BigReal::operator*=(long rhs) {
    mpfr_mul_si(value_, value_, rhs, kRound);
    return *this;
}

BigReal& BigReal::operator/=(long rhs) {
    mpfr_div_si(value_, value_, rhs, kRound);
    return *this;
}

BigReal BigReal::operator-() const {
    BigReal out = *this;
    mpfr_neg(out.value_, out.value_, kRound);
    return out;
}

BigReal operator-(long lhs, const BigReal& rhs) {
    BigReal out = rhs;
    mpfr_si_sub(out.value_, lhs, rhs.value_, kRound);
    return out;
}

BigReal operator/(long lhs, const BigReal& rhs) {
    BigReal out = rhs;
    mpfr_si_div(out.value_, lhs, rhs.value_, kRound);
    return out;
}

bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, long b) {
    return !mpfr_nan_p(a.value_) && mpfr_cmp_si(a.value_, b) == 0;
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
    if (mpfr_nan_p(a.value_)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp_si(a.value_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, double b) {
    return !mpfr_nan_p(a.value_) && !std::isnan(b) && mpfr_cmp_d(a.value_, b) == 0;
}

std::partial_ordering operator<=>(const BigReal& a, double b) {
    if (mpfr_nan_p(a.value_) || std::isnan(b)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp_d(a.value_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

int BigReal::sign() const {
    return mpfr_sgn(value_);
}

bool BigReal::is_zero() const {
    return mpfr_zero_p(value_) != 0;
}

bool BigReal::is_finite() const {
    return mpfr_number_p(value_) != 0;
}

bool BigReal::is_nan() const {
    return mpfr_nan_p(value_) != 0;
}

bool BigReal::is_inf() const {
    return mpfr_inf_p(value_) != 0;
}

long BigReal::exponent() const {
    if (!mpfr_regular_p(value_)) {
        return LONG_MIN;
    }
    return mpfr_get_exp(value_);
}

BigReal BigReal::ldexp(long e) const {
    BigReal out = *this;
    mpfr_mul_2si(out.value_, value_, e, kRound);
    return out;
}

double BigReal::to_double() const {
    return mpfr_get_d(value_, kRound);
}

long BigReal::to_long_floor() const {
    if (!mpfr_fits_slong_p(value_, MPFR_RNDD)) {
        throw std::range_error("value does not fit in a long");
    }
    return mpfr_get_si(value_, MPFR_RNDD);
}

std::string BigReal::to_decimal(int significant_digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", significant_digits, value_);
    std::unique_ptr<char, void (*)(char*)> guard(buf, [](char* p) { mpfr_free_str(p); });
    return std::string(buf);
}

std::string BigReal::to_binary() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", value_);
    std::unique_ptr<char, void (*)(char*)> guard(buf, [](char* p) { mpfr_free_str(p); });
    return std::string(buf);
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log2(const BigReal& x) { return unary(x, mpfr_log2); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal asinh(const BigReal& x) { return unary(x, mpfr_asinh); }
BigReal acosh(const BigReal& x) { return unary(x, mpfr_acosh); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }

BigReal floor(const BigReal& x) {
    BigReal out = x;
    mpfr_floor(out.raw(), x.raw());
    return out;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal out = y.precision() >= x.precision() ? y : x;
    mpfr_atan2(out.raw(), y.raw(), x.raw(), kRound);
    return out;
}

BigReal pow(const BigReal& base, const BigReal& exponent) {
    BigReal out = base.precision() >= exponent.precision() ? base : exponent;
    mpfr_pow(out.raw(), base.raw(), exponent.raw(), kRound);
    return out;
}

BigReal hypot(const BigReal& x, const BigReal& y) {
    BigReal out = x.precision() >= y.precision() ? x : y;
    mpfr_hypot(out.raw(), x.raw(), y.raw(), kRound);
    return out;
}

const BigReal& min(const BigReal& a, const BigReal& b) {
    return (b < a) ? b : a;
}

const BigReal& max(const BigReal& a, const BigReal& b) {
    return (a < b) ? b : a;
}

long relative_gap_log2(const BigReal& a, const BigReal& b) {
    if (a == b) {
        return LONG_MIN;
    }
    const BigReal scale = max(abs(a), abs(b));
    const BigReal gap = abs(a - b) / scale;
    return gap.exponent() - 1;
}

} // namespace fuchsdim
