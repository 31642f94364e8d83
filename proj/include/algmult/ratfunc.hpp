#pragma once

// Reduced fractions of polynomials and their local expansions at a point.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "algmult/poly.hpp"

namespace algmult {

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
template <ExactField F>
class RationalFunction {
public:
    using field_type = F;
    using poly_type = Poly<F>;

    RationalFunction() : den_(F(1)) {}
    RationalFunction(Poly<F> p) : num_(std::move(p)), den_(F(1)) {}  // NOLINT
    RationalFunction(F c) : RationalFunction(Poly<F>(std::move(c))) {}  // NOLINT
    template <std::integral I>
    RationalFunction(I c) : RationalFunction(Poly<F>(F(c))) {}  // NOLINT
    RationalFunction(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    const Poly<F>& num() const { return num_; }
    const Poly<F>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// Value at a point where the denominator does not vanish.
    F eval(const F& at) const {
        F d = den_.eval(at);
        if (d.is_zero()) throw InvalidInput("rational function evaluated at a pole");
        return num_.eval(at) / d;
    }
    bool regular_at(const F& at) const { return !den_.eval(at).is_zero(); }

    RationalFunction inverse() const {
        if (is_zero()) throw InvalidInput("inverse of zero rational function");
        return RationalFunction(den_, num_);
    }

    RationalFunction operator-() const {
        RationalFunction r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this * o.inverse(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) {
            RationalFunction r;
            r.num_ = a.num_ * b.num_;
            return r;
        }
        // Cross-cancel first so the products stay small.
        Poly<F> g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        RationalFunction r;
        r.num_ = exact_div(a.num_, g1) * exact_div(b.num_, g2);
        r.den_ = exact_div(a.den_, g2) * exact_div(b.den_, g1);
        r.normalize_sign();
        return r;
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string(std::string_view var = "λ") const {
        if (is_polynomial()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

private:
    void reduce() {
        if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<F>(F(1));
            return;
        }
        if (!den_.is_constant()) {
            Poly<F> g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        normalize_sign();
    }
    void normalize_sign() {
        if (den_.lead() == F(1)) return;
        F inv = F(1) / den_.lead();
        num_ *= inv;
        den_ *= inv;
    }

    Poly<F> num_;
    Poly<F> den_;
};

/// Truncated Laurent expansion Σ_{k=lowest}^{order} c_k (λ − center)^k.
template <ExactField F>
struct LocalExpansion {
    F center;
    /// ord(num) − ord(den); meaningless when `identically_zero`.
    std::int64_t lowest_exponent = 0;
    std::int64_t order = 0;
    /// coefficients[j] multiplies (λ − center)^(lowest_exponent + j).
    std::vector<F> coefficients;
    bool identically_zero = false;

    /// Coefficient of (λ − center)^k; zero outside the stored window.
    F coefficient(std::int64_t k) const {
        if (identically_zero || k < lowest_exponent || k > order) return F(0);
        return coefficients[static_cast<std::size_t>(k - lowest_exponent)];
    }
};

namespace detail {

/// Strip the factor (λ − center)^k from p, returning the cofactor and k.
template <ExactField F>
std::pair<Poly<F>, std::int64_t> split_local_power(const Poly<F>& shifted) {
    std::int64_t k = 0;
    while (k <= shifted.degree() && shifted.coeff(static_cast<int>(k)).is_zero()) ++k;
    std::vector<F> rest(shifted.coeffs().begin() + k, shifted.coeffs().end());
    return {Poly<F>(std::move(rest)), k};
}

}  // namespace detail

template <ExactField F>
LocalExpansion<F> laurent_expand(const RationalFunction<F>& f, const F& center, std::int64_t order) {
    LocalExpansion<F> e;
    e.center = center;
    e.order = order;
    if (f.is_zero()) {
        e.identically_zero = true;
        e.lowest_exponent = order;
        return e;
    }
    // Work in μ = λ − center.
    auto [num, a] = detail::split_local_power(f.num().shift(center));
    auto [den, b] = detail::split_local_power(f.den().shift(center));
    e.lowest_exponent = a - b;
    if (order < e.lowest_exponent) throw InvalidInput("laurent_expand: order below the lowest exponent");
    const auto terms = static_cast<std::size_t>(order - e.lowest_exponent + 1);
    // Power-series division num/den; den(0) ≠ 0 after stripping.
    const F inv0 = F(1) / den.coeff(0);
    e.coefficients.assign(terms, F(0));
    for (std::size_t k = 0; k < terms; ++k) {
        F acc = num.coeff(static_cast<int>(k));
        for (std::size_t j = 1; j <= k && static_cast<int>(j) <= den.degree(); ++j)
            acc -= den.coeff(static_cast<int>(j)) * e.coefficients[k - j];
        e.coefficients[k] = acc * inv0;
    }
    return e;
}

/// Order of the pole at `at` (0 when f is regular there).
template <ExactField F>
std::int64_t pole_order(const RationalFunction<F>& f, const F& at) {
    if (f.is_zero()) throw InvalidInput("pole_order: zero function");
    std::int64_t d = ord_at(f.den(), at).value() - ord_at(f.num(), at).value();
    return d > 0 ? d : 0;
}

/// ord_at(num) − ord_at(den); the signed valuation of a nonzero rational function.
template <ExactField F>
std::int64_t valuation(const RationalFunction<F>& f, const F& at) {
    if (f.is_zero()) throw InvalidInput("valuation of zero rational function");
    return ord_at(f.num(), at).value() - ord_at(f.den(), at).value();
}

}  // namespace algmult
