#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace resolvent {

struct RootSet {
    std::vector<Complex> roots;
    std::vector<int> multiplicities;
    double residual = 0.0;

    int total_multiplicity() const {
        return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
    }
    int max_multiplicity() const {
        return multiplicities.empty() ? 0 : *std::max_element(multiplicities.begin(), multiplicities.end());
    }
    // Roots repeated according to multiplicity.
    std::vector<Complex> expanded() const {
        std::vector<Complex> out;
        for (std::size_t k = 0; k < roots.size(); ++k)
            out.insert(out.end(), static_cast<std::size_t>(multiplicities[k]), roots[k]);
        return out;
    }
};

class RootFindingError : public DomainError {
public:
    RootFindingError(const std::string& what, std::vector<Complex> best)
        : DomainError(what), best_iterate(std::move(best)) {}
    std::vector<Complex> best_iterate;
};

inline constexpr int kAberthMaxIterations = 200;

inline bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

namespace detail {

// Rounding-error bound for Horner evaluation of p at z.
inline double horner_noise(const ComplexPoly& p, Complex z) {
    double az = std::abs(z);
    double acc = 0.0;
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * az + std::abs(*it);
    return 8.0 * std::numeric_limits<double>::epsilon() * acc;
}

inline std::pair<Complex, Complex> eval_with_derivative(const ComplexPoly& p, Complex z) {
    Complex v(0.0, 0.0);
    Complex d(0.0, 0.0);
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
    }
    return {v, d};
}

} // namespace detail

// Unclustered roots of p, repeated by multiplicity (degree-many values),
// by Aberth-Ehrlich iteration from a perturbed circle around the centroid.
inline std::vector<Complex> aberth_roots(const ComplexPoly& p, int max_iterations = kAberthMaxIterations) {
    const int n = p.degree();
    if (n < 1) throw DomainError("root finding needs degree >= 1");
    const Complex lc = p.leading();
    if (n == 1) return {-p.coeff(0) / lc};

    // radius from the Fujiwara-style bound, kept away from zero
    double radius = 0.0;
    for (int k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(p.coeff(k) / lc), 1.0 / (n - k)));
    radius = std::max(radius, 1e-3);
    const Complex centre = -p.coeff(n - 1) / (lc * static_cast<double>(n));

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[k] = centre + std::polar(radius, 2.0 * kPi * k / n + 0.4);
    std::vector<bool> done(static_cast<std::size_t>(n), false);

    for (int it = 0; it < max_iterations; ++it) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            auto [v, d] = detail::eval_with_derivative(p, z[k]);
            if (std::abs(v) <= detail::horner_noise(p, z[k])) {
                done[k] = true;
                continue;
            }
            all_done = false;
            Complex ratio = v / d;
            Complex repulsion(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            z[k] -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z[k])) done[k] = true;
        }
        if (all_done) break;
    }
    return z;
}

namespace detail {

// Single-linkage clustering of `values` at distance < threshold.
inline std::vector<std::vector<std::size_t>> cluster(const std::vector<Complex>& values, double threshold) {
    const std::size_t n = values.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) < threshold) parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

inline RootSet assemble(const ComplexPoly& f, const std::vector<Complex>& values, const std::vector<int>& mult,
                        double tol) {
    const double threshold = std::max(1e-7, 1e3 * tol);
    RootSet out;
    for (const auto& group : cluster(values, threshold)) {
        Complex sum(0.0, 0.0);
        int m = 0;
        for (auto i : group) {
            sum += values[i] * static_cast<double>(mult[i]);
            m += mult[i];
        }
        out.roots.push_back(sum / static_cast<double>(m));
        out.multiplicities.push_back(m);
    }
    std::vector<std::size_t> order(out.roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lex_less(out.roots[a], out.roots[b]); });
    RootSet sorted;
    for (auto i : order) {
        sorted.roots.push_back(out.roots[i]);
        sorted.multiplicities.push_back(out.multiplicities[i]);
    }
    bool converged = true;
    for (const auto& r : sorted.roots) {
        double v = std::abs(poly_eval(f, r));
        sorted.residual = std::max(sorted.residual, v);
        if (v > tol && v > 1e3 * horner_noise(f, r)) converged = false;
    }
    if (!converged)
        throw RootFindingError("root finder did not converge within " + std::to_string(kAberthMaxIterations) +
                                   " iterations",
                               values);
    return sorted;
}

} // namespace detail

// All complex roots with multiplicities. Roots closer than
// max(1e-7, 1e3 * tol) are merged. For exact input the multiplicities come
// from an exact square-free decomposition before any clustering.
template <class T>
RootSet find_roots(const Polynomial<T>& f, double tol) {
    if (f.degree() < 1) throw DomainError("root finding needs degree >= 1");
    std::vector<Complex> values;
    std::vector<int> mult;
    if constexpr (is_rational_v<T>) {
        auto parts = squarefree_decomposition(f);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (parts[k].degree() < 1) continue;
            for (auto z : aberth_roots(to_complex(parts[k]))) {
                values.push_back(z);
                mult.push_back(static_cast<int>(k) + 1);
            }
        }
    } else {
        values = aberth_roots(f);
        mult.assign(values.size(), 1);
    }
    return detail::assemble(to_complex(f), values, mult, tol);
}

} // namespace resolvent
