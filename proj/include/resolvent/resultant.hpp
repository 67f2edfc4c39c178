#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace resolvent {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Sylvester matrix of f (degree m) and g (degree n): n shifted rows of f's
// coefficients followed by m shifted rows of g's, highest degree first.
template <class T>
Matrix<T> sylvester_matrix(const Polynomial<T>& f, const Polynomial<T>& g) {
    const int m = f.degree();
    const int n = g.degree();
    const int size = m + n;
    Matrix<T> s(static_cast<std::size_t>(size), std::vector<T>(static_cast<std::size_t>(size), T(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[r][r + k] = f.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[n + r][r + k] = g.coeff(n - k);
    return s;
}

// Bareiss fraction-free elimination. Every division is exact, so the
// intermediate entries stay minors of the input rather than growing fractions.
inline Rational determinant(Matrix<Rational> a) {
    const std::size_t n = a.size();
    if (n == 0) return Rational(1);
    Rational sign(1);
    Rational prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Rational(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// LU with partial pivoting.
inline Complex determinant(Matrix<Complex> a) {
    const std::size_t n = a.size();
    Complex det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        if (a[p][k] == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
        if (p != k) {
            std::swap(a[k], a[p]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex factor = a[i][k] / a[k][k];
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= factor * a[k][j];
        }
    }
    return det;
}

template <class T>
T resultant(const Polynomial<T>& f, const Polynomial<T>& g) {
    if (f.is_zero() && g.is_zero()) throw DomainError("undefined resultant");
    if (f.is_zero() || g.is_zero()) return T(0);
    return determinant(sylvester_matrix(f, g));
}

template <class T>
T discriminant(const Polynomial<T>& f) {
    const int n = f.degree();
    if (n < 2) throw DomainError("discriminant needs degree >= 2");
    T r = resultant(f, f.derivative()) / f.leading();
    if ((n * (n - 1) / 2) % 2 == 1) r = T(0) - r;
    return r;
}

} // namespace resolvent
