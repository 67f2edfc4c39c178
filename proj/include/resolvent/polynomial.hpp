#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace resolvent {

// Dense univariate polynomial, coefficients stored lowest degree first.
// The leading stored coefficient is nonzero; the zero polynomial has no
// coefficients and degree -1.
template <class T>
class Polynomial {
public:
    using scalar_type = T;

    Polynomial() = default;
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const T& a) { return Polynomial(std::vector<T>{a}); }
    static Polynomial monomial(const T& a, int k) {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c.back() = a;
        return Polynomial(std::move(c));
    }
    // x - a
    static Polynomial linear_root(const T& a) { return Polynomial({T(0) - a, T(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const T> coeffs() const { return c_; }

    T coeff(int k) const {
        if (k < 0 || k > degree()) return T(0);
        return c_[static_cast<std::size_t>(k)];
    }
    const T& leading() const {
        if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

    Polynomial monic() const {
        const T& lc = leading();
        std::vector<T> c(c_);
        for (auto& a : c) a = a / lc;
        return Polynomial(std::move(c));
    }

    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
        return Polynomial(std::move(d));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(const T& a) {
        for (auto& v : c_) v *= a;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(const Polynomial& a) { return a * T(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && resolvent::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using RationalPoly = Polynomial<Rational>;
using ComplexPoly = Polynomial<Complex>;

// Horner evaluation at a complex point, whatever the coefficient kind.
template <class T>
Complex poly_eval(const Polynomial<T>& p, Complex x) {
    Complex acc(0.0, 0.0);
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_complex(*it);
    return acc;
}

template <class T>
ComplexPoly to_complex(const Polynomial<T>& p) {
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.push_back(to_complex(a));
    return ComplexPoly(std::move(c));
}

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, int k) {
    Polynomial<T> r = Polynomial<T>::constant(T(1));
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

// Quotient and remainder; the divisor must be nonzero.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
    if (den.is_zero()) throw DomainError("division by the zero polynomial");
    if (num.degree() < den.degree()) return {Polynomial<T>{}, num};
    std::vector<T> rem(num.coeffs().begin(), num.coeffs().end());
    std::vector<T> quo(static_cast<std::size_t>(num.degree() - den.degree() + 1), T(0));
    const int dd = den.degree();
    const T& lc = den.leading();
    for (int k = num.degree() - dd; k >= 0; --k) {
        T q = rem[static_cast<std::size_t>(k + dd)] / lc;
        quo[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den.coeff(j);
        rem[static_cast<std::size_t>(k + dd)] = T(0);
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial<T>(std::move(quo)), Polynomial<T>(std::move(rem))};
}

template <class T>
Polynomial<T> operator%(const Polynomial<T>& a, const Polynomial<T>& b) {
    return divmod(a, b).second;
}

// p(q(x))
template <class T>
Polynomial<T> compose(const Polynomial<T>& p, const Polynomial<T>& q) {
    Polynomial<T> r;
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * q + Polynomial<T>::constant(*it);
    return r;
}

// p(x + a)
template <class T>
Polynomial<T> shift(const Polynomial<T>& p, const T& a) {
    return compose(p, Polynomial<T>({a, T(1)}));
}

// Monic gcd over a field. Only meaningful for exact coefficients.
inline RationalPoly gcd(RationalPoly a, RationalPoly b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Yun's square-free decomposition: f = lc * prod_k factors[k-1]^k, each
// factor square-free and pairwise coprime (entries may be constant 1).
inline std::vector<RationalPoly> squarefree_decomposition(const RationalPoly& f) {
    std::vector<RationalPoly> out;
    if (f.degree() < 1) return out;
    RationalPoly fm = f.monic();
    RationalPoly d = fm.derivative();
    RationalPoly a = gcd(fm, d);
    RationalPoly b = divmod(fm, a).first;
    RationalPoly c = divmod(d, a).first;
    RationalPoly e = c - b.derivative();
    while (b.degree() > 0) {
        RationalPoly g = gcd(b, e);
        out.push_back(g);
        b = divmod(b, g).first;
        c = divmod(e, g).first;
        e = c - b.derivative();
    }
    return out;
}

} // namespace resolvent
