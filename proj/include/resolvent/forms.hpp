#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "monodromy.hpp"
#include "perm.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace resolvent {

// Sparse polynomial in `nvars` variables; exponent vectors map to coefficients.
template <class T>
class SparsePoly {
public:
    using Exponents = std::vector<std::uint8_t>;
    static constexpr std::size_t kMaxTerms = 2'000'000;

    SparsePoly() = default;
    explicit SparsePoly(int nvars) : nvars_(nvars) {}

    static SparsePoly one(int nvars) {
        SparsePoly p(nvars);
        p.terms_[Exponents(static_cast<std::size_t>(nvars), 0)] = T(1);
        return p;
    }
    // sum_k coeffs[k] * var_k, every term of degree one
    static SparsePoly linear(int nvars, const std::vector<std::pair<int, T>>& coeffs) {
        SparsePoly p(nvars);
        for (const auto& [var, c] : coeffs) p.add_term(unit(nvars, var), c);
        return p;
    }
    static Exponents unit(int nvars, int var) {
        Exponents e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(var)] = 1;
        return e;
    }

    int nvars() const { return nvars_; }
    std::size_t size() const { return terms_.size(); }
    const std::map<Exponents, T>& terms() const { return terms_; }

    T coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    void add_term(const Exponents& e, const T& c) {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) it->second += c;
        if (resolvent::is_zero(it->second)) terms_.erase(it);
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r(a.nvars_);
        Exponents e(static_cast<std::size_t>(a.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t k = 0; k < e.size(); ++k) {
                    if (ea[k] + eb[k] > 255) throw DomainError("evaluation-only");
                    e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
                }
                r.add_term(e, ca * cb);
                if (r.terms_.size() > kMaxTerms) throw DomainError("evaluation-only");
            }
        return r;
    }

    Complex eval(std::span<const Complex> x) const {
        Complex acc(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            Complex term = to_complex(c);
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k]) term *= std::pow(x[k], static_cast<int>(e[k]));
            acc += term;
        }
        return acc;
    }

    // Rename variables: variable k becomes perm[k].
    SparsePoly relabel(const std::vector<int>& perm) const {
        SparsePoly r(nvars_);
        Exponents f(static_cast<std::size_t>(nvars_));
        for (const auto& [e, c] : terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) f[static_cast<std::size_t>(perm[k])] = e[k];
            r.add_term(f, c);
        }
        return r;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    int nvars_ = 0;
    std::map<Exponents, T> terms_;
};

// The product over group elements S of t_1 x_S(1) + ... + t_n x_S(n).
// Numeric forms carry root values; symbolic forms carry only the exact
// expansion in t_1..t_n, x_1..x_n (variables 0..n-1 and n..2n-1).
struct FormPhi {
    int n = 0;
    std::vector<Permutation> perms;
    std::vector<Complex> roots; // empty for a symbolic form
    std::optional<SparsePoly<Complex>> expanded;
    std::optional<SparsePoly<Integer>> symbolic;

    bool is_symbolic() const { return roots.empty(); }
    std::size_t order() const { return perms.size(); }
};

inline constexpr std::size_t kDefaultExpandLimit = 24;

namespace detail {

inline Complex linear_factor(const Permutation& s, std::span<const Complex> roots, std::span<const Complex> t) {
    Complex acc(0.0, 0.0);
    for (int i = 0; i < s.size(); ++i) acc += t[i] * roots[static_cast<std::size_t>(s(i))];
    return acc;
}

inline std::uint64_t seed_mix(std::uint64_t seed) { return seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL; }

} // namespace detail

inline FormPhi build_phi(const PermGroup& group, const std::vector<Complex>& roots,
                         std::size_t expand_limit = kDefaultExpandLimit) {
    if (static_cast<int>(roots.size()) != group.n) throw DomainError("group degree must equal the number of roots");
    FormPhi phi;
    phi.n = group.n;
    phi.perms = group.elements;
    phi.roots = roots;
    if (group.order() <= expand_limit) {
        auto acc = SparsePoly<Complex>::one(phi.n);
        for (const auto& s : phi.perms) {
            std::vector<std::pair<int, Complex>> lin;
            for (int i = 0; i < phi.n; ++i) lin.emplace_back(i, roots[static_cast<std::size_t>(s(i))]);
            acc = acc * SparsePoly<Complex>::linear(phi.n, lin);
        }
        phi.expanded = std::move(acc);
    }
    return phi;
}

inline FormPhi build_phi(const PermGroup& group, const RootSet& roots, std::size_t expand_limit = kDefaultExpandLimit) {
    return build_phi(group, roots.expanded(), expand_limit);
}

// Exact expansion with the roots as indeterminates.
inline FormPhi symbolic_phi(const PermGroup& group, std::size_t expand_limit = kDefaultExpandLimit) {
    if (group.order() > expand_limit) throw DomainError("evaluation-only");
    FormPhi phi;
    phi.n = group.n;
    phi.perms = group.elements;
    const int vars = 2 * phi.n;
    auto acc = SparsePoly<Integer>::one(vars);
    for (const auto& s : phi.perms) {
        SparsePoly<Integer> lin(vars);
        for (int i = 0; i < phi.n; ++i) {
            auto e = SparsePoly<Integer>::unit(vars, i);
            e[static_cast<std::size_t>(phi.n + s(i))] = 1;
            lin.add_term(e, Integer(1));
        }
        acc = acc * lin;
    }
    phi.symbolic = std::move(acc);
    return phi;
}

// Product of the linear factors at t, using `roots` (the form's own roots by default).
inline Complex phi_eval(const FormPhi& phi, std::span<const Complex> t, std::span<const Complex> roots) {
    if (static_cast<int>(t.size()) != phi.n || static_cast<int>(roots.size()) != phi.n)
        throw DomainError("phi_eval needs n values of t and of the roots");
    Complex acc(1.0, 0.0);
    for (const auto& s : phi.perms) acc *= detail::linear_factor(s, roots, t);
    return acc;
}

inline Complex phi_eval(const FormPhi& phi, std::span<const Complex> t) {
    if (phi.is_symbolic()) throw DomainError("symbolic form needs root values to evaluate");
    return phi_eval(phi, t, phi.roots);
}

// Compare phi at the roots permuted by g (x_i -> x_g(i)) with phi itself at
// random t; a symbolic form is compared coefficient by coefficient.
inline bool phi_invariant_under(const FormPhi& phi, const Permutation& g, int trials = 10, std::uint64_t seed = 0) {
    if (g.size() != phi.n) throw DomainError("permutation degree must equal n");
    if (phi.is_symbolic()) {
        std::vector<int> relabel(static_cast<std::size_t>(2 * phi.n));
        for (int i = 0; i < phi.n; ++i) {
            relabel[static_cast<std::size_t>(i)] = i;
            relabel[static_cast<std::size_t>(phi.n + g(i))] = phi.n + i;
        }
        return phi.symbolic->relabel(relabel) == *phi.symbolic;
    }
    std::vector<Complex> moved(static_cast<std::size_t>(phi.n));
    for (int i = 0; i < phi.n; ++i) moved[i] = phi.roots[static_cast<std::size_t>(g(i))];
    std::mt19937_64 eng(detail::seed_mix(seed));
    std::vector<Complex> t(static_cast<std::size_t>(phi.n));
    for (int k = 0; k < trials; ++k) {
        for (auto& v : t) v = random_in_disk(eng);
        Complex a = phi_eval(phi, t), b = phi_eval(phi, t, moved);
        if (std::abs(a - b) > 1e-8 * std::max({std::abs(a), std::abs(b), 1e-300})) return false;
    }
    return true;
}

// Solution set of the block-sum equations: the last index of each block is
// minus the sum of the others in its block.
struct SubspaceBasis {
    int n = 0;
    std::vector<std::vector<int>> constraints; // blocks, 0-based
    std::vector<int> free;                     // free coordinates
    std::vector<int> dependent;                // dependent[i] = owning block's last index, or -1 if free

    std::vector<Complex> point(std::span<const Complex> free_values) const {
        if (free_values.size() != free.size()) throw DomainError("wrong number of free coordinates");
        std::vector<Complex> t(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        for (std::size_t k = 0; k < free.size(); ++k) t[static_cast<std::size_t>(free[k])] = free_values[k];
        for (const auto& b : constraints) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k + 1 < b.size(); ++k) sum += t[static_cast<std::size_t>(b[k])];
            t[static_cast<std::size_t>(b.back())] = -sum;
        }
        return t;
    }
};

inline SubspaceBasis coincidence_subspace_basis(const SetPartition& partition) {
    SubspaceBasis basis;
    basis.n = partition.size();
    basis.constraints = partition.blocks();
    basis.dependent.assign(static_cast<std::size_t>(basis.n), -1);
    for (const auto& b : basis.constraints) {
        for (std::size_t k = 0; k + 1 < b.size(); ++k) basis.free.push_back(b[k]);
        for (int i : b) basis.dependent[static_cast<std::size_t>(i)] = b.back();
        basis.dependent[static_cast<std::size_t>(b.back())] = b.back();
    }
    for (int i = 0; i < basis.n; ++i)
        if (basis.dependent[static_cast<std::size_t>(i)] != i) basis.dependent[static_cast<std::size_t>(i)] = -1;
    std::sort(basis.free.begin(), basis.free.end());
    return basis;
}

struct VanishCheck {
    bool vanishes = false;
    bool degenerate = false; // all-singletons partition: the subspace is the origin
};

namespace detail {

// Smallest |factor| relative to the sum of its term magnitudes.
inline double min_relative_factor(const FormPhi& phi, std::span<const Complex> t) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : phi.perms) {
        Complex v(0.0, 0.0);
        double mag = 0.0;
        for (int i = 0; i < phi.n; ++i) {
            Complex term = t[i] * phi.roots[static_cast<std::size_t>(s(i))];
            v += term;
            mag += std::abs(term);
        }
        worst = std::min(worst, mag == 0.0 ? 0.0 : std::abs(v) / mag);
    }
    return worst;
}

inline bool sampled_vanishing(const FormPhi& phi, const SubspaceBasis& basis, int samples, double tol,
                              std::uint64_t seed) {
    std::mt19937_64 eng(detail::seed_mix(seed));
    std::vector<Complex> free(basis.free.size());
    for (int k = 0; k < samples; ++k) {
        for (auto& v : free) v = random_in_disk(eng);
        auto t = basis.point(free);
        if (min_relative_factor(phi, t) > tol) return false;
    }
    return true;
}

} // namespace detail

// Phi vanishes at a sample when one factor is zero to relative accuracy tol;
// it vanishes on the subspace when every sample does.
inline VanishCheck phi_vanishes_on(const FormPhi& phi, const SetPartition& partition, int samples = 20,
                                   double tol = 1e-8, std::uint64_t seed = 0) {
    if (phi.is_symbolic()) throw DomainError("vanishing test needs numeric roots");
    if (partition.size() != phi.n) throw DomainError("partition size must equal n");
    if (partition.is_identity_pattern()) return {true, true};
    return {detail::sampled_vanishing(phi, coincidence_subspace_basis(partition), samples, tol, seed), false};
}

// Phi with the dependent coordinates substituted. Each factor becomes
// sum over free i of t_i (x_S(i) - x_S(d(i))), d(i) the last index of i's block.
struct RestrictedPhi {
    SetPartition partition;
    SubspaceBasis basis;
    std::vector<std::vector<Complex>> factors; // coefficient of t_i per factor (numeric)
    std::optional<SparsePoly<Complex>> expanded;
    std::optional<SparsePoly<Integer>> symbolic;
    bool all_coefficients_vanish = false;
    bool exact = false; // decided from the expansion rather than by sampling
};

inline RestrictedPhi restrict_phi(const FormPhi& phi, const SetPartition& partition, double tol = 1e-8,
                                  int samples = 20, std::uint64_t seed = 0) {
    if (partition.size() != phi.n) throw DomainError("partition size must equal n");
    RestrictedPhi r{partition, coincidence_subspace_basis(partition), {}, {}, {}, false, false};
    std::vector<int> last(static_cast<std::size_t>(phi.n));
    for (const auto& b : r.basis.constraints)
        for (int i : b) last[static_cast<std::size_t>(i)] = b.back();

    if (phi.is_symbolic()) {
        const int vars = 2 * phi.n;
        auto acc = SparsePoly<Integer>::one(vars);
        for (const auto& s : phi.perms) {
            SparsePoly<Integer> lin(vars);
            for (int i : r.basis.free) {
                auto e = SparsePoly<Integer>::unit(vars, i);
                auto plus = e, minus = e;
                plus[static_cast<std::size_t>(phi.n + s(i))] += 1;
                minus[static_cast<std::size_t>(phi.n + s(last[static_cast<std::size_t>(i)]))] += 1;
                lin.add_term(plus, Integer(1));
                lin.add_term(minus, Integer(-1));
            }
            acc = acc * lin;
        }
        r.all_coefficients_vanish = acc.size() == 0;
        r.symbolic = std::move(acc);
        r.exact = true;
        return r;
    }

    std::vector<std::vector<double>> bounds;
    for (const auto& s : phi.perms) {
        std::vector<Complex> c(static_cast<std::size_t>(phi.n), Complex(0.0, 0.0));
        std::vector<double> b(static_cast<std::size_t>(phi.n), 0.0);
        for (int i : r.basis.free) {
            Complex hi = phi.roots[static_cast<std::size_t>(s(i))];
            Complex lo = phi.roots[static_cast<std::size_t>(s(last[static_cast<std::size_t>(i)]))];
            // a coincidence of roots up to tol is an exact zero here
            c[i] = std::abs(hi - lo) <= tol * (std::abs(hi) + std::abs(lo)) ? Complex(0.0, 0.0) : hi - lo;
            b[i] = std::abs(c[i]);
        }
        r.factors.push_back(std::move(c));
        bounds.push_back(std::move(b));
    }
    if (phi.expanded) {
        // the same product over |coefficients| bounds the cancellation in each output coefficient
        auto acc = SparsePoly<Complex>::one(phi.n);
        auto bound = SparsePoly<Complex>::one(phi.n);
        for (std::size_t f = 0; f < r.factors.size(); ++f) {
            std::vector<std::pair<int, Complex>> lin, mag;
            for (int i : r.basis.free) {
                lin.emplace_back(i, r.factors[f][static_cast<std::size_t>(i)]);
                mag.emplace_back(i, Complex(bounds[f][static_cast<std::size_t>(i)], 0.0));
            }
            acc = acc * SparsePoly<Complex>::linear(phi.n, lin);
            bound = bound * SparsePoly<Complex>::linear(phi.n, mag);
        }
        bool all = true;
        for (const auto& [e, c] : acc.terms())
            if (std::abs(c) > tol * bound.coeff(e).real()) all = false;
        r.all_coefficients_vanish = all;
        r.expanded = std::move(acc);
        r.exact = true;
    } else {
        r.all_coefficients_vanish =
            partition.is_identity_pattern() || detail::sampled_vanishing(phi, r.basis, samples, tol, seed);
    }
    return r;
}

// Value of a restricted numeric form at the given free coordinates.
inline Complex restricted_eval(const RestrictedPhi& r, std::span<const Complex> free_values) {
    auto t = r.basis.point(free_values);
    Complex acc(1.0, 0.0);
    for (const auto& f : r.factors) {
        Complex v(0.0, 0.0);
        for (std::size_t i = 0; i < f.size(); ++i) v += f[i] * t[i];
        acc *= v;
    }
    return acc;
}

struct Stratum {
    SetPartition partition;
    Point sample_point;
    int complex_codim = 0;
    std::vector<Complex> roots; // labelled roots: indices in a block are equal up to tol
};

// Roots are single-linkage clustered at tol. Clusters are ordered
// lexicographically by centroid and their members get consecutive labels.
inline Stratum stratify_point(const ParamFamily& fam, const Point& alpha, double tol) {
    auto z = aberth_roots(instantiate(fam, alpha));
    auto groups = detail::cluster(z, tol);
    std::vector<Complex> centre;
    for (const auto& g : groups) {
        Complex s(0.0, 0.0);
        for (auto i : g) s += z[i];
        centre.push_back(s / static_cast<double>(g.size()));
    }
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a + 1; b < groups.size(); ++b)
            for (auto i : groups[a])
                for (auto j : groups[b])
                    if (std::abs(z[i] - z[j]) < 10.0 * tol) throw DomainError("refine tolerance");
    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lex_less(centre[a], centre[b]); });
    Stratum s;
    std::vector<std::vector<int>> blocks;
    int next = 0;
    for (auto g : order) {
        std::vector<Complex> members;
        for (auto i : groups[g]) members.push_back(z[i]);
        std::sort(members.begin(), members.end(), lex_less);
        blocks.emplace_back();
        for (auto v : members) {
            blocks.back().push_back(next++);
            s.roots.push_back(v);
        }
    }
    s.partition = SetPartition(fam.n, blocks);
    s.sample_point = alpha;
    s.complex_codim = fam.n - s.partition.block_count();
    return s;
}

namespace detail {

// Least-squares solution of A x = b (rows x cols) by Gaussian elimination
// with complete pivoting; free variables are set to zero. Returns the
// solution and the residual max-norm of the inconsistent rows.
inline std::pair<std::vector<Complex>, double> affine_solve(Matrix<Complex> a, std::vector<Complex> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> colperm(cols);
    std::iota(colperm.begin(), colperm.end(), 0);
    double scale = 0.0;
    for (const auto& r : a)
        for (auto v : r) scale = std::max(scale, std::abs(v));
    std::size_t rank = 0;
    for (; rank < std::min(rows, cols); ++rank) {
        std::size_t pr = rank, pc = rank;
        for (std::size_t i = rank; i < rows; ++i)
            for (std::size_t j = rank; j < cols; ++j)
                if (std::abs(a[i][j]) > std::abs(a[pr][pc])) pr = i, pc = j;
        if (std::abs(a[pr][pc]) <= 1e-12 * scale || scale == 0.0) break;
        std::swap(a[rank], a[pr]);
        std::swap(b[rank], b[pr]);
        for (auto& r : a) std::swap(r[rank], r[pc]);
        std::swap(colperm[rank], colperm[pc]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            Complex f = a[i][rank] / a[rank][rank];
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t j = rank; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
    }
    double residual = 0.0;
    for (std::size_t i = rank; i < rows; ++i) residual = std::max(residual, std::abs(b[i]));
    std::vector<Complex> y(cols, Complex(0.0, 0.0));
    for (std::size_t k = rank; k-- > 0;) {
        Complex acc = b[k];
        for (std::size_t j = k + 1; j < rank; ++j) acc -= a[k][j] * y[j];
        y[k] = acc / a[k][k];
    }
    std::vector<Complex> x(cols);
    for (std::size_t k = 0; k < cols; ++k) x[colperm[k]] = y[k];
    return {x, residual};
}

inline std::vector<int> block_multiplicities(const SetPartition& p) {
    std::vector<int> m;
    for (const auto& b : p.blocks()) m.push_back(static_cast<int>(b.size()));
    return m;
}

inline ComplexPoly planted(const std::vector<Complex>& values, const std::vector<int>& mult) {
    ComplexPoly p({1.0});
    for (std::size_t b = 0; b < values.size(); ++b) p = p * pow(ComplexPoly({-values[b], 1.0}), mult[b]);
    return p;
}

// Solve coefficient rows c_j0 + sum_k c_jk alpha_k = target_j for alpha.
inline std::pair<Point, double> fit_parameters(const ParamFamily& fam, const ComplexPoly& target) {
    Matrix<Complex> a(static_cast<std::size_t>(fam.n), std::vector<Complex>(static_cast<std::size_t>(fam.m)));
    std::vector<Complex> rhs(static_cast<std::size_t>(fam.n));
    for (int j = 0; j < fam.n; ++j) {
        for (int k = 0; k < fam.m; ++k) a[j][k] = fam.coeffs[j][k + 1];
        rhs[j] = target.coeff(j) - fam.coeffs[j][0];
    }
    return affine_solve(a, rhs);
}

inline double coefficient_norm(const ComplexPoly& p) {
    double s = 1.0;
    for (auto c : p.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

} // namespace detail

// A parameter point whose polynomial has exactly the given coincidence
// pattern. Block b first gets the value b; if the family cannot reach that,
// seeded Levenberg-Marquardt searches over block values and parameters jointly.
inline Point realize_stratum(const ParamFamily& fam, const SetPartition& partition, std::uint64_t seed = 0) {
    if (partition.size() != fam.n) throw DomainError("partition size must equal the family degree");
    const auto mult = detail::block_multiplicities(partition);
    const std::size_t k = mult.size();
    std::vector<Complex> values(k);
    for (std::size_t b = 0; b < k; ++b) values[b] = static_cast<double>(b);
    {
        auto target = detail::planted(values, mult);
        auto [alpha, res] = detail::fit_parameters(fam, target);
        if (res <= 1e-10 * detail::coefficient_norm(target)) return alpha;
    }

    std::mt19937_64 eng(detail::seed_mix(seed));
    const std::size_t unknowns = k + static_cast<std::size_t>(fam.m);
    const std::size_t n = static_cast<std::size_t>(fam.n);
    for (int start = 0; start < 16; ++start) {
        std::vector<Complex> z(unknowns);
        for (auto& v : z) v = random_in_disk(eng, 2.0);
        auto residual = [&](const std::vector<Complex>& x) {
            std::vector<Complex> v(x.begin(), x.begin() + static_cast<long>(k));
            auto p = detail::planted(v, mult);
            std::vector<Complex> r(n);
            for (std::size_t j = 0; j < n; ++j) {
                Complex c = fam.coeffs[j][0];
                for (int q = 0; q < fam.m; ++q) c += fam.coeffs[j][static_cast<std::size_t>(q) + 1] * x[k + static_cast<std::size_t>(q)];
                r[j] = p.coeff(static_cast<int>(j)) - c;
            }
            return r;
        };
        auto norm = [](const std::vector<Complex>& r) {
            double s = 0.0;
            for (auto v : r) s += std::norm(v);
            return std::sqrt(s);
        };
        auto r = residual(z);
        double lambda = 1e-3;
        for (int it = 0; it < 200 && norm(r) > 1e-13; ++it) {
            // Jacobian: d/dv_b of prod (x - v)^m is -m p / (x - v_b)
            Matrix<Complex> J(n, std::vector<Complex>(unknowns, Complex(0.0, 0.0)));
            std::vector<Complex> v(z.begin(), z.begin() + static_cast<long>(k));
            auto p = detail::planted(v, mult);
            for (std::size_t b = 0; b < k; ++b) {
                auto q = divmod(p, ComplexPoly({-v[b], 1.0})).first;
                for (std::size_t j = 0; j < n; ++j) J[j][b] = -static_cast<double>(mult[b]) * q.coeff(static_cast<int>(j));
            }
            for (std::size_t j = 0; j < n; ++j)
                for (int q = 0; q < fam.m; ++q) J[j][k + static_cast<std::size_t>(q)] = -fam.coeffs[j][static_cast<std::size_t>(q) + 1];
            Matrix<Complex> N(unknowns, std::vector<Complex>(unknowns, Complex(0.0, 0.0)));
            std::vector<Complex> g(unknowns, Complex(0.0, 0.0));
            for (std::size_t a = 0; a < unknowns; ++a) {
                for (std::size_t c = 0; c < unknowns; ++c)
                    for (std::size_t j = 0; j < n; ++j) N[a][c] += std::conj(J[j][a]) * J[j][c];
                for (std::size_t j = 0; j < n; ++j) g[a] -= std::conj(J[j][a]) * r[j];
            }
            bool improved = false;
            for (int tries = 0; tries < 8 && !improved; ++tries) {
                auto M = N;
                for (std::size_t a = 0; a < unknowns; ++a) M[a][a] += lambda * (1.0 + std::abs(N[a][a]));
                auto step = detail::affine_solve(M, g).first;
                auto trial = z;
                for (std::size_t a = 0; a < unknowns; ++a) trial[a] += step[a];
                auto rt = residual(trial);
                if (norm(rt) < norm(r)) {
                    z = trial;
                    r = rt;
                    lambda = std::max(lambda * 0.3, 1e-15);
                    improved = true;
                } else {
                    lambda *= 10.0;
                }
            }
            if (!improved) break;
        }
        std::vector<Complex> v(z.begin(), z.begin() + static_cast<long>(k));
        if (norm(r) > 1e-10 * detail::coefficient_norm(detail::planted(v, mult))) continue;
        bool distinct = true;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) distinct = distinct && std::abs(v[a] - v[b]) > 1e-6;
        if (!distinct) continue;
        return Point(z.begin() + static_cast<long>(k), z.end());
    }
    throw DomainError("stratum not realizable in this family");
}

inline bool realizable(const ParamFamily& fam, const SetPartition& partition) {
    try {
        realize_stratum(fam, partition);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

struct ChainStratum {
    Stratum stratum;
    int chain_codim = 0; // position k in the chain: complex codimension of the k-th critical manifold
    int real_dim = 0;    // 2m - 2k
};

struct BoundResult {
    int q1 = 0;
    std::vector<ChainStratum> chain;
    int chain_length_unconstrained = 0;
};

// Longest height chain of coincidence patterns of group elements (even ones
// only when even_only), bottom above the identity, each realized in the
// family. No group means the full symmetric group.
inline BoundResult parameter_lower_bound(const ParamFamily& fam, const PermGroup* group, bool even_only) {
    const int n = fam.n;
    if (group && group->n != n) throw DomainError("group degree must equal the family degree");
    std::unordered_set<std::uint64_t> patterns;
    if (group) {
        for (const auto& g : group->elements) {
            if (even_only && parity(g) != Parity::even) continue;
            patterns.insert(detail::pack(coincidence_partition(g).rgs()));
        }
    }
    auto in_group = [&](const SetPartition& p) {
        if (group) return patterns.count(detail::pack(p.rgs())) > 0;
        return !even_only || (n - p.block_count()) % 2 == 0;
    };
    auto bottom_ok = [](const SetPartition& p) { return !p.is_identity_pattern(); };

    BoundResult out;
    out.chain_length_unconstrained = longest_partition_chain(n, in_group, bottom_ok).length;
    auto best = longest_partition_chain(
        n, [&](const SetPartition& p) { return in_group(p) && (p.is_identity_pattern() || realizable(fam, p)); },
        bottom_ok);
    out.q1 = best.length;
    int k = 0;
    for (const auto& p : best.witness) {
        ++k;
        Stratum s;
        s.partition = p;
        s.sample_point = realize_stratum(fam, p);
        s.complex_codim = n - p.block_count();
        out.chain.push_back({s, k, 2 * fam.m - 2 * k});
    }
    return out;
}

} // namespace resolvent
