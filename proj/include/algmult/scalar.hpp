#pragma once

// Exact coefficient fields: the rationals Q and the Gaussian rationals Q(i).
// Both types are canonical at all times, so equality is structural.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <compare>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "algmult/errors.hpp"

namespace algmult {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline mpz_class parse_integer(std::string_view s) {
    std::string tmp(s);
    if (!tmp.empty() && tmp.front() == '+') tmp.erase(0, 1);
    return mpz_class(tmp, 10);
}

}  // namespace detail

class Rational {
public:
    static constexpr const char* tag = "Q";
    static constexpr bool is_real_field = true;

    Rational() = default;
    template <std::integral I>
    Rational(I v) : v_(static_cast<long>(v)) {}  // NOLINT: implicit from integers is intended
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw InvalidInput("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Accepts "a" or "a/b" with an optional sign on the numerator.
    static Rational parse(std::string_view text) {
        auto s = detail::trim(text);
        auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            if (!detail::is_integer_literal(s, true))
                throw InvalidInput("cannot parse rational '" + std::string(text) + "'");
            return Rational(detail::parse_integer(s), mpz_class(1));
        }
        auto num = detail::trim(s.substr(0, slash));
        auto den = detail::trim(s.substr(slash + 1));
        if (!detail::is_integer_literal(num, true) || !detail::is_integer_literal(den, true))
            throw InvalidInput("cannot parse rational '" + std::string(text) + "'");
        mpz_class d = detail::parse_integer(den);
        if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        return Rational(detail::parse_integer(num), d);
    }

    /// Exact binary value of a finite double.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw InvalidInput("non-finite double");
        return Rational(mpq_class(x));
    }

    static Rational zero() { return {}; }
    static Rational one() { return Rational(1); }

    std::string to_string() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_real() const { return true; }

    const mpq_class& value() const { return v_; }
    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    double to_double() const { return v_.get_d(); }
    std::complex<double> to_complex() const { return {v_.get_d(), 0.0}; }
    Rational real() const { return *this; }
    Rational imag() const { return {}; }
    Rational conj() const { return *this; }
    Rational abs() const { return Rational(::abs(v_)); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw InvalidInput("division by zero");
        v_ /= o.v_;
        return *this;
    }
    Rational inverse() const { return Rational(1) /= *this; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class v_;
};

/// Element a + b·i of Q(i).
class GaussianRational {
public:
    static constexpr const char* tag = "Qi";
    static constexpr bool is_real_field = false;

    GaussianRational() = default;
    template <std::integral I>
    GaussianRational(I v) : re_(v) {}  // NOLINT
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {Rational(1)}; }

    /// Accepts "a", "a/b", "bi", "i", "-i", "a+bi", "a-b/ci" (no spaces inside a component).
    static GaussianRational parse(std::string_view text) {
        auto s = detail::trim(text);
        if (s.empty()) throw InvalidInput("empty Gaussian rational");
        if (s.back() != 'i') return {Rational::parse(s)};
        s.remove_suffix(1);
        std::size_t split = std::string_view::npos;
        for (std::size_t k = s.size(); k-- > 1;)
            if (s[k] == '+' || s[k] == '-') {
                split = k;
                break;
            }
        std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
        std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
        Rational im;
        if (im_part.empty() || im_part == "+")
            im = Rational(1);
        else if (im_part == "-")
            im = Rational(-1);
        else
            im = Rational::parse(im_part);
        Rational re = re_part.empty() ? Rational() : Rational::parse(re_part);
        return {re, im};
    }

    std::string to_string() const {
        if (im_.is_zero()) return re_.to_string();
        std::string imag;
        if (im_ == Rational(1))
            imag = "i";
        else if (im_ == Rational(-1))
            imag = "-i";
        else
            imag = im_.to_string() + "i";
        if (re_.is_zero()) return imag;
        return re_.to_string() + (im_.sign() > 0 ? "+" : "") + imag;
    }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }
    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw InvalidInput("division by zero");
        if (o.im_.is_zero()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }
    GaussianRational inverse() const { return GaussianRational(1) /= *this; }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

private:
    Rational re_;
    Rational im_;
};

template <class F>
concept ExactField = requires(const F a, const F b, std::string_view s) {
    { a + b } -> std::same_as<F>;
    { a - b } -> std::same_as<F>;
    { a * b } -> std::same_as<F>;
    { a / b } -> std::same_as<F>;
    { -a } -> std::same_as<F>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::convertible_to<std::string>;
    { a.to_complex() } -> std::same_as<std::complex<double>>;
    { F::parse(s) } -> std::same_as<F>;
    { F::tag } -> std::convertible_to<const char*>;
};

static_assert(ExactField<Rational>);
static_assert(ExactField<GaussianRational>);

/// Value in {0, 1, 2, ...} ∪ {∞}.
class ExtendedNat {
public:
    constexpr ExtendedNat() = default;
    constexpr ExtendedNat(std::int64_t v) : value_(v) {  // NOLINT
        if (v < 0) throw InvalidInput("ExtendedNat must be nonnegative");
    }
    static constexpr ExtendedNat infinite() {
        ExtendedNat e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    std::int64_t value() const {
        if (infinite_) throw InvalidInput("value() of infinite ExtendedNat");
        return value_;
    }
    std::string to_string() const { return infinite_ ? std::string("inf") : std::to_string(value_); }

    friend constexpr ExtendedNat operator+(ExtendedNat a, ExtendedNat b) {
        if (a.infinite_ || b.infinite_) return infinite();
        return ExtendedNat(a.value_ + b.value_);
    }
    friend constexpr bool operator==(ExtendedNat a, ExtendedNat b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(ExtendedNat a, ExtendedNat b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend std::ostream& operator<<(std::ostream& os, ExtendedNat e) { return os << e.to_string(); }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

}  // namespace algmult
