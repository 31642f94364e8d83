#pragma once

// Dense univariate polynomials over an exact field, lowest power first.

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algmult/errors.hpp"
#include "algmult/scalar.hpp"

namespace algmult {

template <ExactField F>
class Poly {
public:
    using field_type = F;

    Poly() = default;
    Poly(F constant) {  // NOLINT: constants promote implicitly
        if (!constant.is_zero()) c_.push_back(std::move(constant));
    }
    template <std::integral I>
    Poly(I constant) : Poly(F(constant)) {}  // NOLINT
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

    /// The indeterminate λ.
    static Poly x() { return Poly(std::vector<F>{F(0), F(1)}); }
    static Poly monomial(F coeff, int power) {
        if (coeff.is_zero()) return {};
        std::vector<F> c(static_cast<std::size_t>(power) + 1, F(0));
        c.back() = std::move(coeff);
        return Poly(std::move(c));
    }
    /// λ − root.
    static Poly linear_factor(const F& root) { return Poly(std::vector<F>{-root, F(1)}); }

    /// −1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == F(1); }

    const std::vector<F>& coeffs() const { return c_; }
    F coeff(int k) const {
        if (k < 0 || k > degree()) return F(0);
        return c_[static_cast<std::size_t>(k)];
    }
    const F& lead() const {
        if (c_.empty()) throw InvalidInput("leading coefficient of zero polynomial");
        return c_.back();
    }

    F eval(const F& at) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= at;
            acc += *it;
        }
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * F(static_cast<long>(k));
        return Poly(std::move(d));
    }

    /// p(λ + shift), via repeated synthetic division (Taylor shift).
    Poly shift(const F& by) const {
        if (by.is_zero() || c_.size() <= 1) return *this;
        std::vector<F> a = c_;
        const std::size_t n = a.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) a[j - 1] += by * a[j];
        return Poly(std::move(a));
    }

    Poly monic() const {
        if (c_.empty() || lead() == F(1)) return *this;
        F inv = F(1) / lead();
        Poly r = *this;
        for (auto& v : r.c_) v *= inv;
        return r;
    }

    Poly pow(unsigned e) const {
        Poly result(F(1)), base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    Poly conj() const {
        Poly r = *this;
        for (auto& v : r.c_) v = v.conj();
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }
    Poly& operator*=(const F& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b * a.c_[0];
        if (b.is_constant()) return a * b.c_[0];
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const F& s) { return a *= s; }
    friend Poly operator*(const F& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder; throws on division by the zero polynomial.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw InvalidInput("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<F> rem = a.c_;
        const int db = b.degree();
        std::vector<F> quo(static_cast<std::size_t>(a.degree() - db) + 1, F(0));
        const F inv_lead = F(1) / b.lead();
        for (int k = a.degree(); k >= db; --k) {
            F q = rem[static_cast<std::size_t>(k)];
            if (q.is_zero()) continue;
            if (!inv_lead.is_one()) q *= inv_lead;
            for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.c_[static_cast<std::size_t>(j)];
            quo[static_cast<std::size_t>(k - db)] = std::move(q);
        }
        rem.resize(static_cast<std::size_t>(db));
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    /// Division known to be exact; a nonzero remainder is an internal error.
    friend Poly exact_div(const Poly& a, const Poly& b) {
        if (b.is_constant()) {
            if (b.is_zero()) throw InvalidInput("polynomial division by zero");
            return a * (F(1) / b.c_[0]);
        }
        auto [q, r] = divmod(a, b);
        ALGMULT_ENSURE(r.is_zero(), "exact polynomial division left a remainder");
        return q;
    }

    /// Monic gcd; gcd(0, 0) = 0.
    friend Poly gcd(Poly a, Poly b) {
        if (a.degree() < b.degree()) std::swap(a, b);
        if (b.is_zero()) return a.monic();
        a = a.monic();
        b = b.monic();
        while (!b.is_zero()) {
            if (b.is_constant()) return Poly(F(1));
            Poly r = divmod(a, b).second.monic();
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    friend Poly lcm(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return exact_div(a * b, gcd(a, b)).monic();
    }

    std::string to_string(std::string_view var = "λ") const {
        if (c_.empty()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const F& a = c_[static_cast<std::size_t>(k)];
            if (a.is_zero()) continue;
            std::string body;
            bool negative = false;
            std::string text = a.to_string();
            if (a.is_real()) {
                negative = !text.empty() && text.front() == '-';
                if (negative) text.erase(0, 1);
            } else {
                text = "(" + text + ")";
            }
            if (k == 0)
                body = text;
            else {
                if (text != "1") body = text;
                body += std::string(var);
                if (k > 1) body += "^" + std::to_string(k);
            }
            if (out.empty())
                out = negative ? "-" + body : body;
            else
                out += (negative ? " - " : " + ") + body;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<F> c_;
};

/// Largest k with (λ − at)^k dividing p, by repeated synthetic division; ∞ for p = 0.
template <ExactField F>
ExtendedNat ord_at(const Poly<F>& p, const F& at) {
    if (p.is_zero()) return ExtendedNat::infinite();
    std::vector<F> c = p.coeffs();
    std::int64_t k = 0;
    while (c.size() > 1) {
        // Horner's scheme gives the quotient coefficients in place and the remainder last.
        std::vector<F> q(c.size() - 1, F(0));
        F acc(0);
        for (std::size_t i = c.size(); i-- > 0;) {
            acc *= at;
            acc += c[i];
            if (i > 0) q[i - 1] = acc;
        }
        if (!acc.is_zero()) break;
        c = std::move(q);
        ++k;
    }
    return k;
}

/// Multiplicity of `at` as a root, via the squarefree tower p, gcd(p, p′), ...
/// Each step lowers the multiplicity of every repeated root by one.
template <ExactField F>
ExtendedNat mult_via_gcd(const Poly<F>& p, const F& at) {
    if (p.is_zero()) throw InvalidInput("mult_via_gcd: zero polynomial");
    Poly<F> q = p;
    std::int64_t m = 0;
    while (!q.is_constant() && q.eval(at).is_zero()) {
        ++m;
        q = gcd(q, q.derivative());
    }
    return m;
}

/// (λ − at)^k.
template <ExactField F>
Poly<F> power_of_linear(const F& at, unsigned k) {
    return Poly<F>::linear_factor(at).pow(k);
}

}  // namespace algmult
