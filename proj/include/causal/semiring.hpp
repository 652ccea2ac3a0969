#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

#include "causal/order.hpp"

namespace causal {

/// Commutative semiring: associative, commutative + and * with units, * distributing over +.
template <typename R>
concept Semiring = std::regular<R> && requires(const R a, const R b) {
    { a + b } -> std::same_as<R>;
    { a * b } -> std::same_as<R>;
    { R::zero() } -> std::same_as<R>;
    { R::one() } -> std::same_as<R>;
    { a.to_string() } -> std::convertible_to<std::string>;
};

/// Parses "p/q" or an integer literal; throws CausalError on malformed text or q = 0.
mpq_class parse_rational(std::string_view text);
std::string rational_string(const mpq_class& q);

/// Signed exact rational.
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
    Rational(long num, long den);

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static Rational parse(std::string_view text) { return Rational(parse_rational(text)); }

    const mpq_class& value() const { return value_; }
    std::string to_string() const { return rational_string(value_); }
    int sign() const { return sgn(value_); }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(value_ + o.value_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(value_ - o.value_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(value_ * o.value_)); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }

    bool operator==(const Rational& o) const { return value_ == o.value_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        const int c = cmp(value_, o.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

/// Exact non-negative rational: the default probabilistic semiring.
class NonNegRational {
public:
    NonNegRational() = default;
    NonNegRational(long v);  // NOLINT(google-explicit-constructor)
    explicit NonNegRational(const Rational& v);
    explicit NonNegRational(mpq_class v);
    NonNegRational(long num, long den);

    static NonNegRational zero() { return NonNegRational(); }
    static NonNegRational one() { return NonNegRational(1); }
    static NonNegRational parse(std::string_view text) { return NonNegRational(parse_rational(text)); }

    const mpq_class& value() const { return value_; }
    Rational signed_value() const { return Rational(value_); }
    std::string to_string() const { return rational_string(value_); }
    bool is_zero() const { return sgn(value_) == 0; }

    NonNegRational operator+(const NonNegRational& o) const;
    NonNegRational operator*(const NonNegRational& o) const;
    NonNegRational& operator+=(const NonNegRational& o) { value_ += o.value_; return *this; }

    bool operator==(const NonNegRational& o) const { return value_ == o.value_; }
    std::strong_ordering operator<=>(const NonNegRational& o) const {
        const int c = cmp(value_, o.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

/// The Boolean semiring ({false, true}, or, and): possibilistic weights.
class Boolean {
public:
    constexpr Boolean() = default;
    constexpr Boolean(bool v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static constexpr Boolean zero() { return Boolean(false); }
    static constexpr Boolean one() { return Boolean(true); }

    constexpr bool value() const { return value_; }
    std::string to_string() const { return value_ ? "1" : "0"; }

    constexpr Boolean operator+(const Boolean& o) const { return Boolean(value_ || o.value_); }
    constexpr Boolean operator*(const Boolean& o) const { return Boolean(value_ && o.value_); }
    constexpr Boolean& operator+=(const Boolean& o) { value_ = value_ || o.value_; return *this; }

    constexpr bool operator==(const Boolean&) const = default;
    constexpr auto operator<=>(const Boolean&) const = default;

private:
    bool value_ = false;
};

static_assert(Semiring<Rational>);
static_assert(Semiring<NonNegRational>);
static_assert(Semiring<Boolean>);

/// Signed value used when reporting discrepancies between semiring sums.
inline Rational discrepancy_value(const NonNegRational& v) { return v.signed_value(); }
inline Rational discrepancy_value(const Rational& v) { return v; }
inline Rational discrepancy_value(const Boolean& v) { return Rational(v.value() ? 1 : 0); }

}  // namespace causal
