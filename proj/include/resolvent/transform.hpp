#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "resultant.hpp"
#include "roots.hpp"

namespace resolvent {

// y = phi(x), applied to the roots of a polynomial of larger degree.
template <class T>
struct TschirnhausMap {
    Polynomial<T> phi;

    TschirnhausMap() = default;
    explicit TschirnhausMap(Polynomial<T> p) : phi(std::move(p)) {
        if (phi.degree() < 1) throw DomainError("Tschirnhaus map must have degree >= 1");
    }
};

namespace detail {

template <class T>
void require_monic(const Polynomial<T>& f) {
    if constexpr (is_rational_v<T>) {
        if (!f.is_monic()) throw DomainError("polynomial must be monic");
    } else {
        if (f.is_zero() || std::abs(f.leading() - Complex(1.0, 0.0)) > 1e-12)
            throw DomainError("polynomial must be monic");
    }
}

// Newton divided differences, exact.
inline RationalPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    const std::size_t n = xs.size();
    std::vector<Rational> d(ys);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) d[i] = (d[i] - d[i - 1]) / (xs[i] - xs[i - level]);
    RationalPoly out;
    for (std::size_t i = n; i-- > 0;) out = out * RationalPoly::linear_root(xs[i]) + RationalPoly::constant(d[i]);
    return out;
}

// Coefficients of a degree-<=n polynomial from its values on the circle of
// the given radius (inverse DFT; unitary, so well conditioned).
template <class Fn>
std::vector<Complex> interpolate_on_circle(Fn&& value_at, int degree, double radius) {
    const int count = degree + 1;
    std::vector<Complex> samples(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) samples[j] = value_at(radius * std::polar(1.0, 2.0 * kPi * j / count));
    std::vector<Complex> c(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < count; ++j) acc += samples[j] * std::polar(1.0, -2.0 * kPi * j * k / count);
        c[k] = acc / (static_cast<double>(count) * std::pow(radius, k));
    }
    return c;
}

} // namespace detail

// F(y) = Res_x(f(x), y - phi(x)), whose roots are phi(x_i) with
// multiplicity. Exact for rational input; for complex input the resultant is
// sampled on a circle scaled to the image roots and interpolated.
template <class T>
Polynomial<T> tschirnhaus(const Polynomial<T>& f, const TschirnhausMap<T>& map) {
    detail::require_monic(f);
    const int n = f.degree();
    if (n < 2) throw DomainError("Tschirnhaus transformation needs degree >= 2");
    if (map.phi.degree() >= n) throw DomainError("reduce modulo f: map degree must be below " + std::to_string(n));
    if (map.phi.degree() < 1) throw DomainError("Tschirnhaus map must have degree >= 1");

    auto at = [&](const T& y) { return resultant(f, Polynomial<T>::constant(y) - map.phi); };
    if constexpr (is_rational_v<T>) {
        std::vector<Rational> xs, ys;
        for (int k = 0; k <= n; ++k) {
            xs.emplace_back(k);
            ys.push_back(at(Rational(k)));
        }
        return detail::interpolate(xs, ys).monic();
    } else {
        double radius = 1.0;
        for (auto x : aberth_roots(f)) radius = std::max(radius, std::abs(poly_eval(map.phi, x)));
        auto c = detail::interpolate_on_circle(at, n, radius);
        c[static_cast<std::size_t>(n)] = Complex(1.0, 0.0);
        return ComplexPoly(std::move(c));
    }
}

// A root x of f whose image phi(x) is nearest y.
template <class T>
Complex recover_root(const Polynomial<T>& f, const TschirnhausMap<T>& map, Complex y, double tol) {
    auto roots = find_roots(f, 1e-12);
    std::optional<std::size_t> best;
    int within = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        double gap = std::abs(poly_eval(map.phi, roots.roots[i]) - y);
        if (gap <= tol) ++within;
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    if (!best || best_gap > tol) throw DomainError("no preimage within tolerance");
    if (within > 1) throw DomainError("ambiguous preimage");
    return roots.roots[*best];
}

// f(x - a_{n-1}/n), which has no x^{n-1} term, and the shift a_{n-1}/n.
template <class T>
std::pair<Polynomial<T>, T> depress(const Polynomial<T>& f) {
    detail::require_monic(f);
    const int n = f.degree();
    T s = f.coeff(n - 1) / T(n);
    if (is_zero(s)) return {f, s};
    auto g = shift(f, T(0) - s);
    // the x^{n-1} coefficient is zero in exact arithmetic
    std::vector<T> c(g.coeffs().begin(), g.coeffs().end());
    c[static_cast<std::size_t>(n - 1)] = T(0);
    return {Polynomial<T>(std::move(c)), s};
}

// ---------------------------------------------------------------------------
// Bring-Jerrard reduction.

struct BringJerrardResult {
    Complex p;
    Complex q;
    TschirnhausMap<Complex> map;
    double residuals = 0.0; // max |coefficient| of y^4, y^3, y^2
};

namespace detail {

// Power sums p_1..p_count of the roots of a monic polynomial (p_0 = degree).
inline std::vector<Complex> power_sums(const ComplexPoly& f, int count) {
    const int n = f.degree();
    std::vector<Complex> e(static_cast<std::size_t>(n) + 1);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) e[k] = (k % 2 ? -1.0 : 1.0) * f.coeff(n - k);
    std::vector<Complex> p(static_cast<std::size_t>(count) + 1);
    p[0] = static_cast<double>(n);
    for (int k = 1; k <= count; ++k) {
        Complex acc(0.0, 0.0);
        for (int i = 1; i <= std::min(k - 1, n); ++i) acc += (i % 2 ? 1.0 : -1.0) * e[i] * p[k - i];
        if (k <= n) acc += (k % 2 ? 1.0 : -1.0) * static_cast<double>(k) * e[k];
        p[k] = acc;
    }
    return p;
}

// Homogeneous roots (lambda : mu) of a*l^2 + 2*b*l*m + c*m^2.
inline std::vector<std::array<Complex, 2>> homogeneous_quadratic(Complex a, Complex b, Complex c) {
    const Complex one(1.0, 0.0);
    bool flip = std::abs(a) < std::abs(c);
    if (flip) std::swap(a, c);
    if (a == Complex(0.0, 0.0)) {
        if (b == Complex(0.0, 0.0)) return {{one, one}, {one, -one}}; // identically zero
        return {{one, 0.0}, {0.0, one}};
    }
    Complex s = std::sqrt(b * b - a * c);
    if (std::abs(-b + s) > std::abs(-b - s)) s = -s;
    Complex r1 = (-b - s) / a;
    Complex r2 = r1 == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : c / (a * r1);
    std::vector<std::array<Complex, 2>> out{{r1, one}, {r2, one}};
    if (flip)
        for (auto& r : out) std::swap(r[0], r[1]);
    return out;
}

// Roots of x^3 + b x^2 + c x + d by Cardano, polished by Newton.
inline std::array<Complex, 3> monic_cubic_roots(Complex b, Complex c, Complex d) {
    Complex shift = -b / 3.0;
    Complex p = c - b * b / 3.0;
    Complex q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex inner = -q / 2.0 + disc;
    if (std::abs(-q / 2.0 - disc) > std::abs(inner)) inner = -q / 2.0 - disc;
    Complex u = std::pow(inner, 1.0 / 3.0);
    std::array<Complex, 3> t;
    for (int k = 0; k < 3; ++k) {
        Complex uk = u * std::polar(1.0, 2.0 * kPi * k / 3.0);
        t[k] = uk == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : uk - p / (3.0 * uk);
    }
    std::array<Complex, 3> out;
    for (int k = 0; k < 3; ++k) {
        Complex x = t[k] + shift;
        for (int it = 0; it < 3; ++it) {
            Complex f = ((x + b) * x + c) * x + d;
            Complex df = (3.0 * x + 2.0 * b) * x + c;
            if (df == Complex(0.0, 0.0)) break;
            Complex step = f / df;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            x -= step;
        }
        out[k] = x;
    }
    return out;
}

// Homogeneous roots of a*l^3 + b*l^2*m + c*l*m^2 + d*m^3.
inline std::vector<std::array<Complex, 2>> homogeneous_cubic(Complex a, Complex b, Complex c, Complex d) {
    const Complex one(1.0, 0.0);
    std::vector<std::array<Complex, 2>> out;
    if (std::abs(a) >= std::abs(d)) {
        if (a == Complex(0.0, 0.0)) return out;
        for (auto r : monic_cubic_roots(b / a, c / a, d / a)) out.push_back({r, one});
    } else {
        for (auto r : monic_cubic_roots(c / d, b / d, a / d)) out.push_back({one, r});
    }
    return out;
}

using Vec4 = std::array<Complex, 4>;

struct QuarticStage {
    std::vector<Complex> psum; // power sums of the principal quintic, p_0..p_12
    // full coefficient vector c_0..c_4 from (c_1..c_4), enforcing sum z = 0
    std::array<Complex, 5> full(const Vec4& w) const {
        std::array<Complex, 5> c{};
        Complex acc(0.0, 0.0);
        for (int j = 1; j <= 4; ++j) {
            c[j] = w[j - 1];
            acc += w[j - 1] * psum[j];
        }
        c[0] = -acc / psum[0];
        return c;
    }
    Complex bilinear(const Vec4& u, const Vec4& v) const {
        auto a = full(u);
        auto b = full(v);
        Complex acc(0.0, 0.0);
        for (int j = 0; j <= 4; ++j)
            for (int k = 0; k <= 4; ++k) acc += a[j] * b[k] * psum[j + k];
        return acc;
    }
    Complex cubic(const Vec4& w) const {
        auto c = full(w);
        Complex acc(0.0, 0.0);
        for (int j = 0; j <= 4; ++j)
            for (int k = 0; k <= 4; ++k)
                for (int l = 0; l <= 4; ++l) acc += c[j] * c[k] * c[l] * psum[j + k + l];
        return acc;
    }
};

inline Vec4 combine(Complex a, const Vec4& u, Complex b, const Vec4& v) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a * u[i] + b * v[i];
    return r;
}

inline double norm(const Vec4& v) {
    double s = 0.0;
    for (auto x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline Vec4 unit(int i) {
    Vec4 v{};
    v[static_cast<std::size_t>(i)] = 1.0;
    return v;
}

// Quartic maps z = c_0 + c_1 y + ... + c_4 y^4 with sum z = sum z^2 = sum z^3 = 0
// over the roots of a principal quintic. A line on the quadric sum z^2 = 0 is
// found with two square roots; the cubic condition on that line is solved by
// Cardano. Every branch combination is returned.
inline std::vector<std::array<Complex, 5>> quartic_stage_candidates(const ComplexPoly& principal) {
    QuarticStage st{power_sums(principal, 12)};
    auto q = [&](const Vec4& v) { return st.bilinear(v, v); };
    std::vector<std::array<Complex, 5>> out;

    // isotropic vectors on lines through pairs of coordinate vectors
    const std::array<std::array<int, 2>, 6> pairs{{{3, 2}, {3, 1}, {3, 0}, {2, 1}, {2, 0}, {1, 0}}};
    std::vector<Vec4> isotropic;
    for (auto [i, j] : pairs) {
        Vec4 u = unit(i), v = unit(j);
        Complex a = q(u), b = st.bilinear(u, v), c = q(v);
        double scale = std::abs(a) + std::abs(b) + std::abs(c);
        if (scale == 0.0) continue;
        for (auto [l, m] : homogeneous_quadratic(a, b, c)) {
            Vec4 w = combine(l, u, m, v);
            if (norm(w) > 0.0) isotropic.push_back(w);
        }
        if (!isotropic.empty()) break;
    }

    for (const auto& iso : isotropic) {
        // tangent hyperplane {w : B(iso, w) = 0}
        Vec4 grad;
        for (int i = 0; i < 4; ++i) grad[i] = st.bilinear(iso, unit(i));
        int pivot = 0;
        for (int i = 1; i < 4; ++i)
            if (std::abs(grad[i]) > std::abs(grad[pivot])) pivot = i;
        if (grad[pivot] == Complex(0.0, 0.0)) continue;
        std::vector<Vec4> tangent;
        for (int i = 0; i < 4; ++i) {
            if (i == pivot) continue;
            tangent.push_back(combine(1.0, unit(i), -grad[i] / grad[pivot], unit(pivot)));
        }
        // drop the tangent basis vector most aligned with iso
        std::size_t drop = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < tangent.size(); ++k) {
            int coord = 0;
            for (int i = 0, seen = 0; i < 4; ++i) {
                if (i == pivot) continue;
                if (seen++ == static_cast<int>(k)) coord = i;
            }
            if (std::abs(iso[coord]) > best) {
                best = std::abs(iso[coord]);
                drop = k;
            }
        }
        std::vector<Vec4> rest;
        for (std::size_t k = 0; k < tangent.size(); ++k)
            if (k != drop) rest.push_back(tangent[k]);
        const Vec4& w1 = rest[0];
        const Vec4& w2 = rest[1];
        for (auto [l, m] : homogeneous_quadratic(q(w1), st.bilinear(w1, w2), q(w2))) {
            Vec4 second = combine(l, w1, m, w2);
            if (norm(second) == 0.0) continue;
            // the line {lambda*iso + mu*second} lies on the quadric
            Complex a = st.cubic(iso);
            Complex d = st.cubic(second);
            Complex plus = st.cubic(combine(1.0, iso, 1.0, second));
            Complex minus = st.cubic(combine(1.0, iso, -1.0, second));
            Complex b = (plus - minus - 2.0 * d) / 2.0;
            Complex c = (plus + minus - 2.0 * a) / 2.0;
            for (auto [lam, mu] : homogeneous_cubic(a, b, c, d)) {
                Vec4 w = combine(lam, iso, mu, second);
                if (norm(w) == 0.0) continue;
                out.push_back(st.full(w));
            }
        }
    }
    return out;
}

// min pairwise distance of the images relative to their largest modulus
inline double separation(const std::vector<Complex>& images) {
    double big = 0.0;
    for (auto y : images) big = std::max(big, std::abs(y));
    if (big == 0.0) return 0.0;
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j) sep = std::min(sep, std::abs(images[i] - images[j]));
    return sep / big;
}

// Tr(g mod f) from the power sums of f.
inline Complex trace_mod(const ComplexPoly& g, const ComplexPoly& f, const std::vector<Complex>& psum) {
    auto r = g % f;
    Complex acc(0.0, 0.0);
    for (int j = 0; j <= r.degree(); ++j) acc += r.coeff(j) * psum[static_cast<std::size_t>(j)];
    return acc;
}

// Gauss-Newton (minimum-norm steps) on the coefficients of phi driving the
// image power sums s_1, s_2, s_3 to zero.
inline ComplexPoly refine_bring_jerrard_map(const ComplexPoly& f, ComplexPoly phi, int iterations = 4) {
    const auto psum = power_sums(f, f.degree() - 1);
    auto sums = [&](const ComplexPoly& g) {
        ComplexPoly g2 = (g * g) % f;
        return std::array<Complex, 3>{trace_mod(g, f, psum), trace_mod(g2, f, psum), trace_mod(g2 * g, f, psum)};
    };
    auto size = [](const std::array<Complex, 3>& r) { return std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]); };
    auto current = sums(phi);
    for (int it = 0; it < iterations; ++it) {
        ComplexPoly phi2 = (phi * phi) % f;
        // J[k][j] = (k+1) Tr(phi^k x^j)
        std::array<std::array<Complex, 5>, 3> J;
        for (int j = 0; j < 5; ++j) {
            ComplexPoly xj = ComplexPoly::monomial(1.0, j);
            J[0][j] = trace_mod(xj, f, psum);
            J[1][j] = 2.0 * trace_mod(phi * xj, f, psum);
            J[2][j] = 3.0 * trace_mod(phi2 * xj, f, psum);
        }
        // (J J^H) y = r, delta = -J^H y
        Matrix<Complex> a(3, std::vector<Complex>(4));
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                Complex acc(0.0, 0.0);
                for (int j = 0; j < 5; ++j) acc += J[r][j] * std::conj(J[c][j]);
                a[r][c] = acc;
            }
            a[r][3] = current[r];
        }
        for (int k = 0; k < 3; ++k) {
            int piv = k;
            for (int r = k + 1; r < 3; ++r)
                if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
            std::swap(a[k], a[piv]);
            if (a[k][k] == Complex(0.0, 0.0)) return phi;
            for (int r = k + 1; r < 3; ++r) {
                Complex m = a[r][k] / a[k][k];
                for (int c = k; c < 4; ++c) a[r][c] -= m * a[k][c];
            }
        }
        std::array<Complex, 3> y;
        for (int k = 2; k >= 0; --k) {
            Complex acc = a[k][3];
            for (int c = k + 1; c < 3; ++c) acc -= a[k][c] * y[c];
            y[k] = acc / a[k][k];
        }
        std::vector<Complex> coeffs(5);
        for (int j = 0; j < 5; ++j) {
            Complex d(0.0, 0.0);
            for (int r = 0; r < 3; ++r) d += std::conj(J[r][j]) * y[r];
            coeffs[j] = phi.coeff(j) - d;
        }
        ComplexPoly next(coeffs);
        auto next_sums = sums(next);
        if (!(size(next_sums) < size(current))) break;
        phi = std::move(next);
        current = next_sums;
    }
    return phi;
}

inline double bj_residual(const ComplexPoly& F) {
    return std::max({std::abs(F.coeff(4)), std::abs(F.coeff(3)), std::abs(F.coeff(2))});
}

} // namespace detail

// Reduce a monic quintic to y^5 + p y + q by a degree-4 Tschirnhaus map built
// in stages: depress, a quadratic map killing y^4 and y^3 (one square root),
// then a quartic map killing y^2 (two square roots and a cubic). Among the
// branch choices the one with the best-separated image roots wins.
template <class T>
BringJerrardResult bring_jerrard(const Polynomial<T>& input, double tol) {
    detail::require_monic(input);
    if (input.degree() != 5) throw DomainError("Bring-Jerrard reduction needs a quintic");
    if constexpr (is_rational_v<T>) {
        if (discriminant(input) == 0) throw DomainError("degenerate quintic");
    }
    const ComplexPoly f = to_complex(input);
    {
        auto rs = find_roots(f, 1e-10);
        if (rs.max_multiplicity() > 1) throw DomainError("degenerate quintic");
    }
    const auto roots = aberth_roots(f);

    auto within = [&](int k) { return std::abs(f.coeff(k)) <= tol; };
    if (within(4) && within(3) && within(2)) {
        BringJerrardResult r{f.coeff(1), f.coeff(0), TschirnhausMap<Complex>(ComplexPoly({0.0, 1.0})),
                             detail::bj_residual(f)};
        return r;
    }

    auto [depressed, s] = depress(f);
    const ComplexPoly unshift({s, 1.0}); // t = x + s

    // quadratic stage on the depressed roots: y = t^2 + u t + v
    std::vector<ComplexPoly> quadratic;
    if (std::abs(depressed.coeff(3)) <= tol) quadratic.push_back(ComplexPoly({0.0, 1.0}));
    {
        auto S = detail::power_sums(depressed, 4);
        Complex v = -S[2] / 5.0;
        for (auto [l, m] : detail::homogeneous_quadratic(S[2], S[3], S[4] + 2.0 * v * S[2] + 5.0 * v * v)) {
            if (m == Complex(0.0, 0.0)) continue;
            quadratic.push_back(ComplexPoly({v, l / m, 1.0}));
        }
    }

    std::optional<BringJerrardResult> best;
    double best_sep = -1.0;
    double best_res = std::numeric_limits<double>::infinity();
    for (const auto& quad : quadratic) {
        ComplexPoly principal = tschirnhaus(depressed, TschirnhausMap<Complex>(quad));
        for (const auto& c : detail::quartic_stage_candidates(principal)) {
            std::vector<Complex> coeffs(c.begin(), c.end());
            ComplexPoly quartic(coeffs);
            if (quartic.degree() < 1) continue;
            ComplexPoly phi = compose(quartic, compose(quad, unshift)) % f;
            if (phi.degree() < 1) continue;
            std::vector<Complex> images;
            double radius = 0.0;
            for (auto x : roots) radius = std::max(radius, std::abs(poly_eval(phi, x)));
            if (radius == 0.0) continue;
            // unit image radius keeps p, q and the residual coefficients O(1)
            phi = detail::refine_bring_jerrard_map(f, phi * Complex(1.0 / radius, 0.0));
            for (auto x : roots) images.push_back(poly_eval(phi, x));
            double sep = detail::separation(images);
            ComplexPoly F = tschirnhaus(f, TschirnhausMap<Complex>(phi));
            double res = detail::bj_residual(F);
            bool ok = res <= tol;
            bool best_ok = best && best_res <= tol;
            bool better = !best || (ok && !best_ok) || (ok == best_ok && (ok ? sep > best_sep : res < best_res));
            if (better) {
                best = BringJerrardResult{F.coeff(1), F.coeff(0), TschirnhausMap<Complex>(phi), res};
                best_sep = sep;
                best_res = res;
            }
        }
    }
    if (!best) throw DomainError("Bring-Jerrard reduction found no admissible map");
    if (best->residuals > tol)
        throw DomainError("Bring-Jerrard residual " + std::to_string(best->residuals) + " exceeds tolerance " +
                          std::to_string(tol));
    return *best;
}

// ---------------------------------------------------------------------------

struct OneParamForm {
    Complex c;     // p / q^(4/5)
    Complex scale; // principal fifth root of q
};

// y = scale * z turns y^5 + p y + q into q (z^5 + c z + 1).
inline OneParamForm one_param_normalize(Complex p, Complex q) {
    if (q == Complex(0.0, 0.0)) throw DomainError("already one-parameter: y^5 + p y = y (y^4 + p)");
    Complex scale = std::exp(std::log(q) / 5.0);
    if (p == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), scale};
    Complex c = p / std::exp(4.0 * std::log(q) / 5.0);
    return {c, scale};
}

// y^5 + 15 y^4 - 10 gamma y^2 + 3 gamma^2
inline ComplexPoly klein_family(Complex gamma) {
    return ComplexPoly({3.0 * gamma * gamma, 0.0, -10.0 * gamma, 0.0, 15.0, 1.0});
}

} // namespace resolvent
