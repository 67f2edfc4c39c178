#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "polynomial.hpp"
#include "resultant.hpp"
#include "roots.hpp"
#include "transform.hpp"

namespace resolvent {

using Point = std::vector<Complex>;

// Monic degree-n family whose coefficient of x^j is the affine form
// coeffs[j][0] + sum_k coeffs[j][k] * alpha_k, for j = 0..n-1.
struct ParamFamily {
    int n = 0;
    int m = 0;
    std::vector<std::vector<Complex>> coeffs;

    ParamFamily() = default;
    ParamFamily(int n_, int m_, std::vector<std::vector<Complex>> rows) : n(n_), m(m_), coeffs(std::move(rows)) {
        if (n < 1) throw DomainError("family degree must be >= 1");
        if (m < 1) throw DomainError("family needs at least one parameter");
        // an explicit leading row is accepted if it is the constant 1
        if (static_cast<int>(coeffs.size()) == n + 1) {
            const auto& top = coeffs.back();
            bool monic = !top.empty() && top[0] == Complex(1.0, 0.0);
            for (std::size_t k = 1; k < top.size(); ++k) monic = monic && top[k] == Complex(0.0, 0.0);
            if (!monic) throw DomainError("family must be monic with constant leading coefficient 1");
            coeffs.pop_back();
        }
        if (static_cast<int>(coeffs.size()) != n) throw DomainError("family needs one coefficient row per degree below n");
        for (auto& row : coeffs) {
            if (static_cast<int>(row.size()) > m + 1) throw DomainError("coefficient row longer than m + 1");
            row.resize(static_cast<std::size_t>(m) + 1, Complex(0.0, 0.0));
        }
    }

    // x^n + alpha_1 x^(n-1) + ... + alpha_n
    static ParamFamily general(int n) {
        std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(n),
                                               std::vector<Complex>(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0)));
        for (int j = 0; j < n; ++j) rows[j][static_cast<std::size_t>(n - j)] = 1.0;
        return ParamFamily(n, n, std::move(rows));
    }

    // base(x) + alpha * slope(x) with deg slope < deg base = n, base monic
    static ParamFamily pencil(const ComplexPoly& base, const ComplexPoly& slope) {
        const int n = base.degree();
        if (n < 1 || base.leading() != Complex(1.0, 0.0)) throw DomainError("pencil base must be monic");
        if (slope.degree() >= n) throw DomainError("pencil slope must have lower degree than the base");
        std::vector<std::vector<Complex>> rows;
        for (int j = 0; j < n; ++j) rows.push_back({base.coeff(j), slope.coeff(j)});
        return ParamFamily(n, 1, std::move(rows));
    }
};

// The Klein resolvent with its two coefficient slots as independent
// parameters: y^5 + 15 y^4 - 10 a1 y^2 + 3 a2. klein_family(g) sits at (g, g^2).
inline ParamFamily klein_param_family() {
    std::vector<std::vector<Complex>> rows(5, std::vector<Complex>(3, Complex(0.0, 0.0)));
    rows[0][2] = 3.0;
    rows[2][1] = -10.0;
    rows[4][0] = 15.0;
    return ParamFamily(5, 2, std::move(rows));
}

inline ComplexPoly instantiate(const ParamFamily& fam, const Point& alpha) {
    if (static_cast<int>(alpha.size()) != fam.m) throw DomainError("parameter point must have length m");
    std::vector<Complex> c(static_cast<std::size_t>(fam.n) + 1, Complex(0.0, 0.0));
    for (int j = 0; j < fam.n; ++j) {
        Complex v = fam.coeffs[j][0];
        for (int k = 0; k < fam.m; ++k) v += fam.coeffs[j][k + 1] * alpha[k];
        c[j] = v;
    }
    c[fam.n] = 1.0;
    return ComplexPoly(std::move(c));
}

// Linear part of the family along `dir`: d/ds instantiate(a + s dir).
inline ComplexPoly family_derivative(const ParamFamily& fam, const Point& dir) {
    std::vector<Complex> c(static_cast<std::size_t>(fam.n), Complex(0.0, 0.0));
    for (int j = 0; j < fam.n; ++j)
        for (int k = 0; k < fam.m; ++k) c[j] += fam.coeffs[j][k + 1] * dir[k];
    return ComplexPoly(std::move(c));
}

struct Loop {
    Point basepoint;
    std::vector<Point> waypoints;
};

// initial_step is a fraction of each segment; min_step is a distance in
// parameter space.
struct TrackOptions {
    double initial_step = 1e-2;
    double min_step = 1e-8;
    double newton_tol = 1e-12;
    double collision_factor = 4.0;
};

struct TraceRow {
    int segment = 0;
    double t = 0.0;
    Point alpha;
    std::vector<Complex> roots;
};

class NearCriticalPath : public DomainError {
public:
    explicit NearCriticalPath(Point where) : DomainError("near-critical path"), point(std::move(where)) {}
    Point point;
};

namespace detail {

inline Point lerp(const Point& a, const Point& b, double t) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + t * (b[k] - a[k]);
    return r;
}

inline Point axpy(const Point& a, Complex s, const Point& dir) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + s * dir[k];
    return r;
}

inline double min_separation(const std::vector<Complex>& z) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) d = std::min(d, std::abs(z[i] - z[j]));
    return d;
}

inline double point_norm(const Point& a) {
    double s = 0.0;
    for (auto v : a) s += std::norm(v);
    return std::sqrt(s);
}

inline Point random_direction(std::mt19937_64& eng, int m) {
    Point u(static_cast<std::size_t>(m));
    double len = 0.0;
    while (len < 1e-3) {
        for (auto& v : u) v = random_in_disk(eng);
        len = point_norm(u);
    }
    for (auto& v : u) v /= len;
    return u;
}

// Newton on p from z; false if it does not settle in a few iterations.
inline bool newton_polish(const ComplexPoly& p, Complex& z, double tol, int max_iter = 8) {
    for (int it = 0; it < max_iter; ++it) {
        auto [v, d] = eval_with_derivative(p, z);
        if (std::abs(v) <= 4.0 * horner_noise(p, z)) return true;
        if (d == Complex(0.0, 0.0)) return false;
        Complex step = v / d;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) return true;
    }
    return false;
}

// Start labelling: roots sorted lexicographically, polished.
inline std::vector<Complex> labelled_roots(const ComplexPoly& p) {
    auto z = aberth_roots(p);
    for (auto& r : z) newton_polish(p, r, 1e-15, 3);
    std::sort(z.begin(), z.end(), lex_less);
    double scale = 1.0;
    for (auto r : z) scale = std::max(scale, std::abs(r));
    if (z.size() > 1 && min_separation(z) <= 1e-7 * scale)
        throw DomainError("basepoint lies on the discriminant locus");
    return z;
}

// Continue the roots z of instantiate(a) along the straight segment a -> b.
inline void track_segment(const ParamFamily& fam, const Point& a, const Point& b, std::vector<Complex>& z,
                          const TrackOptions& opts, int segment, std::vector<TraceRow>* trace) {
    Point dir(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) dir[k] = b[k] - a[k];
    const ComplexPoly slope = family_derivative(fam, dir);
    const std::size_t n = z.size();
    const double length = point_norm(dir);
    double t = 0.0;
    double h = opts.initial_step;
    std::vector<Complex> pred(n), corr(n);
    while (t < 1.0) {
        h = std::min(h, 1.0 - t);
        const ComplexPoly here = instantiate(fam, lerp(a, b, t));
        const double sep_here = min_separation(z);
        for (std::size_t i = 0; i < n; ++i) {
            auto [v, d] = eval_with_derivative(here, z[i]);
            (void)v;
            pred[i] = z[i] - h * poly_eval(slope, z[i]) / d;
        }
        const double t_next = (1.0 - t <= h) ? 1.0 : t + h;
        const ComplexPoly there = instantiate(fam, lerp(a, b, t_next));
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            corr[i] = pred[i];
            ok = newton_polish(there, corr[i], opts.newton_tol) && std::isfinite(pred[i].real()) &&
                 std::isfinite(pred[i].imag());
        }
        if (ok) {
            const double sep = min_separation(corr);
            for (std::size_t i = 0; i < n && ok; ++i) {
                if (std::abs(corr[i] - pred[i]) >= sep / opts.collision_factor) ok = false;
                // no root may travel half the gap to its nearest neighbour in one step
                if (std::abs(corr[i] - z[i]) >= 0.5 * sep_here) ok = false;
            }
        }
        if (!ok) {
            h *= 0.5;
            if (h * length < opts.min_step) throw NearCriticalPath(lerp(a, b, t));
            continue;
        }
        z = corr;
        t = t_next;
        if (trace) trace->push_back({segment, t, lerp(a, b, t), z});
        h *= 2.0;
    }
}

} // namespace detail

// sigma with root_i(end) = root_sigma(i)(start), roots labelled in
// lexicographic order at the basepoint. Tracking A then B gives sigma_B * sigma_A.
inline Permutation track_loop(const ParamFamily& fam, const Loop& loop, const TrackOptions& opts = {},
                              std::vector<TraceRow>* trace = nullptr) {
    if (!(opts.min_step > 0.0 && opts.min_step <= opts.initial_step) || !(opts.newton_tol > 0.0) ||
        !(opts.collision_factor >= 2.0))
        throw DomainError("invalid tracking options");
    const auto& w = loop.waypoints;
    if (w.size() < 2 || w.front() != loop.basepoint || w.back() != loop.basepoint)
        throw DomainError("loop must start and end at its basepoint");
    for (const auto& p : w)
        if (static_cast<int>(p.size()) != fam.m) throw DomainError("parameter point must have length m");
    for (std::size_t k = 1; k < w.size(); ++k)
        if (w[k] == w[k - 1]) throw DomainError("consecutive loop waypoints must differ");

    const auto start = detail::labelled_roots(instantiate(fam, loop.basepoint));
    auto z = start;
    if (trace) trace->push_back({0, 0.0, loop.basepoint, z});
    for (std::size_t k = 1; k < w.size(); ++k) detail::track_segment(fam, w[k - 1], w[k], z, opts, static_cast<int>(k - 1), trace);

    const double sep = detail::min_separation(start);
    std::vector<int> images(z.size(), -1);
    std::vector<bool> used(z.size(), false);
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < start.size(); ++j)
            if (std::abs(z[i] - start[j]) < std::abs(z[i] - start[best])) best = j;
        if (used[best] || (start.size() > 1 && std::abs(z[i] - start[best]) >= sep / opts.collision_factor))
            throw DomainError("tracked roots did not return to the start roots");
        used[best] = true;
        images[i] = static_cast<int>(best);
    }
    return Permutation(std::move(images));
}

inline Loop reversed(const Loop& loop) {
    Loop r{loop.basepoint, loop.waypoints};
    std::reverse(r.waypoints.begin(), r.waypoints.end());
    return r;
}

// A then B, both based at the same point.
inline Loop concatenate(const Loop& a, const Loop& b) {
    if (a.basepoint != b.basepoint) throw DomainError("loops must share a basepoint");
    Loop r = a;
    r.waypoints.insert(r.waypoints.end(), b.waypoints.begin() + 1, b.waypoints.end());
    return r;
}

// Regular polygon of radius r around `centre` in the direction `dir`,
// based at centre + r * dir.
inline Loop polygon_loop(const Point& centre, const Point& dir, double r, int sides = 24) {
    Loop loop;
    for (int k = 0; k <= sides; ++k) {
        Complex s = r * std::polar(1.0, 2.0 * kPi * (k % sides) / sides);
        loop.waypoints.push_back(detail::axpy(centre, s, dir));
    }
    loop.basepoint = loop.waypoints.front();
    return loop;
}

struct LineRestriction {
    Point origin;
    Point direction;
    ComplexPoly discriminant; // in the line coordinate s
    std::vector<Complex> critical; // its roots, sorted lexicographically
};

namespace detail {

inline double coefficient_scale(const ComplexPoly& p) {
    double s = 0.0;
    for (auto c : p.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

inline Complex line_discriminant_at(const ParamFamily& fam, const Point& origin, const Point& dir, Complex s) {
    return discriminant(instantiate(fam, axpy(origin, s, dir)));
}

// Sharpen a critical value s0 by Newton on f = f_x = 0 in (x, s).
inline Complex polish_critical(const ParamFamily& fam, const Point& origin, const Point& dir, Complex s0) {
    const ComplexPoly A = instantiate(fam, origin);
    const ComplexPoly B = family_derivative(fam, dir);
    auto z = aberth_roots(A + B * s0);
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (std::abs(z[i] - z[j]) < std::abs(z[bi] - z[bj])) bi = i, bj = j;
    Complex x = 0.5 * (z[bi] + z[bj]);
    Complex s = s0;
    const ComplexPoly A1 = A.derivative(), B1 = B.derivative(), A2 = A1.derivative(), B2 = B1.derivative();
    for (int it = 0; it < 30; ++it) {
        Complex F = poly_eval(A, x) + s * poly_eval(B, x);
        Complex G = poly_eval(A1, x) + s * poly_eval(B1, x);
        Complex Fx = G, Fs = poly_eval(B, x);
        Complex Gx = poly_eval(A2, x) + s * poly_eval(B2, x), Gs = poly_eval(B1, x);
        Complex det = Fx * Gs - Fs * Gx;
        if (det == Complex(0.0, 0.0)) return s0;
        Complex dx = (F * Gs - Fs * G) / det;
        Complex ds = (Fx * G - F * Gx) / det;
        x -= dx;
        s -= ds;
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return s0;
        if (std::abs(ds) <= 1e-15 * std::max(1.0, std::abs(s)) && std::abs(dx) <= 1e-14 * std::max(1.0, std::abs(x)))
            break;
    }
    return std::abs(s - s0) <= 1e-6 * std::max(1.0, std::abs(s0)) ? s : s0;
}

// Discriminant along origin + s dir, interpolated on |s| = radius. Returns
// the trimmed polynomial; empty when identically zero.
inline ComplexPoly line_discriminant(const ParamFamily& fam, const Point& origin, const Point& dir, double radius,
                                     bool& vanishes) {
    const int bound = 2 * fam.n - 2;
    if (bound < 1) {
        vanishes = false;
        return ComplexPoly({1.0});
    }
    double value_scale = 0.0;
    auto at = [&](Complex s) {
        auto p = instantiate(fam, axpy(origin, s, dir));
        value_scale = std::max(value_scale, std::pow(1.0 + coefficient_scale(p), bound));
        return discriminant(p);
    };
    auto c = interpolate_on_circle(at, bound, radius);
    double top = 0.0;
    for (int k = 0; k <= bound; ++k) top = std::max(top, std::abs(c[k]) * std::pow(radius, k));
    vanishes = top <= 1e-11 * value_scale;
    if (vanishes) return {};
    // only the top end is trimmed: it fixes the degree
    for (int k = bound; k >= 0 && std::abs(c[k]) * std::pow(radius, k) <= 1e-9 * top; --k) c[k] = 0.0;
    return ComplexPoly(std::move(c));
}

} // namespace detail

// Discriminant of the family restricted to origin + s * direction and its
// critical values. `radius` is the interpolation circle; it grows until every
// critical value sits well inside unless `fixed_radius` is set.
inline LineRestriction restrict_to_line(const ParamFamily& fam, const Point& origin, const Point& direction,
                                        double radius = 1.0, bool fixed_radius = false) {
    LineRestriction out{origin, direction, {}, {}};
    for (int attempt = 0; attempt < 8; ++attempt) {
        bool vanishes = false;
        out.discriminant = detail::line_discriminant(fam, origin, direction, radius, vanishes);
        if (vanishes) throw DomainError("line lies in discriminant locus");
        out.critical.clear();
        if (out.discriminant.degree() >= 1) out.critical = aberth_roots(out.discriminant);
        double far = 0.0;
        for (auto s : out.critical) far = std::max(far, std::abs(s));
        if (fixed_radius || far <= 0.5 * radius) break;
        radius = 2.0 * far;
    }
    if (fixed_radius) {
        std::erase_if(out.critical, [&](Complex s) { return std::abs(s) >= radius; });
    }
    // A multiple root of the restricted discriminant is one critical value.
    // Numerically it splits by about eps^(1/k) while the centroid stays
    // accurate, so a close group is merged when the centroid is a root to
    // rounding level. Distinct nearby roots leave a much larger value there.
    {
        double far = 0.0;
        for (auto s : out.critical) far = std::max(far, std::abs(s));
        const auto& D = out.discriminant;
        std::vector<Complex> merged;
        for (const auto& group : detail::cluster(out.critical, 1e-2 * far)) {
            Complex c(0.0, 0.0);
            for (auto i : group) c += out.critical[i];
            c /= static_cast<double>(group.size());
            double mag = 0.0;
            for (int k = 0; k <= D.degree(); ++k) mag += std::abs(D.coeff(k)) * std::pow(std::abs(c), k);
            if (group.size() > 1 && std::abs(poly_eval(D, c)) <= 1e-10 * mag) {
                // a k-fold root is a simple root of the (k-1)-th derivative
                ComplexPoly d = D;
                for (std::size_t k = 1; k < group.size(); ++k) d = d.derivative();
                const ComplexPoly d1 = d.derivative();
                for (int it = 0; it < 8; ++it) {
                    Complex slope = poly_eval(d1, c);
                    if (slope == Complex(0.0, 0.0)) break;
                    Complex step = poly_eval(d, c) / slope;
                    if (std::abs(step) > 1e-2 * far) break;
                    c -= step;
                }
                merged.push_back(c);
            } else {
                for (auto i : group) merged.push_back(out.critical[i]);
            }
        }
        out.critical = std::move(merged);
    }
    for (auto& s : out.critical) s = detail::polish_critical(fam, origin, direction, s);
    std::sort(out.critical.begin(), out.critical.end(), lex_less);
    return out;
}

namespace detail {

// Lasso around each critical value: straight stem from s = 0, then a
// 12-gon of radius 0.3 x (distance to the nearest other critical value or
// to the basepoint), entered on the side facing the basepoint.
inline std::vector<Loop> lassos(const LineRestriction& line) {
    std::vector<Loop> loops;
    const auto& cs = line.critical;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        double gap = std::abs(cs[k]);
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (j != k) gap = std::max(0.0, std::min(gap, std::abs(cs[k] - cs[j])));
        if (gap == 0.0) throw DomainError("coincident critical values on the line");
        const double r = 0.3 * gap;
        const Complex toward_base = -cs[k] / std::abs(cs[k]);
        Loop loop;
        loop.basepoint = line.origin;
        loop.waypoints.push_back(line.origin);
        for (int v = 0; v <= 12; ++v) {
            Complex s = cs[k] + r * toward_base * std::polar(1.0, 2.0 * kPi * (v % 12) / 12);
            loop.waypoints.push_back(axpy(line.origin, s, line.direction));
        }
        loop.waypoints.push_back(line.origin);
        loops.push_back(std::move(loop));
    }
    return loops;
}

} // namespace detail

inline LineRestriction random_line(const ParamFamily& fam, const Point& basepoint, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    return restrict_to_line(fam, basepoint, detail::random_direction(eng, fam.m));
}

// One lasso per critical value of a seeded random line through basepoint.
inline std::vector<Loop> petal_loops(const ParamFamily& fam, const Point& basepoint, std::uint64_t seed) {
    detail::labelled_roots(instantiate(fam, basepoint));
    return detail::lassos(random_line(fam, basepoint, seed));
}

// Seeded basepoint in the unit polydisk, re-drawn while it is too close to
// the discriminant locus.
inline Point random_basepoint(const ParamFamily& fam, std::uint64_t seed) {
    std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Point p(static_cast<std::size_t>(fam.m));
        for (auto& v : p) v = random_in_disk(eng);
        auto z = aberth_roots(instantiate(fam, p));
        if (z.size() < 2 || detail::min_separation(z) > 1e-3) return p;
    }
    throw DomainError("no regular basepoint found");
}

struct MonodromyReport {
    std::uint64_t seed = 0;
    Point basepoint;
    std::vector<Complex> roots;
    std::vector<Complex> critical;
    std::vector<Loop> loops;
    std::vector<Permutation> permutations;
    PermGroup group;
};

inline MonodromyReport monodromy_report(const ParamFamily& fam, const Point& basepoint, const TrackOptions& opts,
                                        std::uint64_t seed, std::size_t max_order = 1'000'000) {
    MonodromyReport r;
    r.seed = seed;
    r.basepoint = basepoint;
    r.roots = detail::labelled_roots(instantiate(fam, basepoint));
    auto line = random_line(fam, basepoint, seed);
    r.critical = line.critical;
    r.loops = detail::lassos(line);
    for (const auto& loop : r.loops) r.permutations.push_back(track_loop(fam, loop, opts));
    r.group = closure(r.permutations, fam.n, max_order);
    return r;
}

inline PermGroup monodromy_group(const ParamFamily& fam, const TrackOptions& opts = {}, std::uint64_t seed = 0,
                                 std::size_t max_order = 1'000'000) {
    return monodromy_report(fam, random_basepoint(fam, seed), opts, seed, max_order).group;
}

struct InertiaReport {
    Point basepoint;
    std::vector<Complex> roots;
    std::vector<Complex> critical; // line coordinates of the enclosed critical values
    std::vector<Loop> loops;
    std::vector<Permutation> permutations;
    PermGroup group;
};

// Lassos around the critical values within `radius` on a seeded random line
// through a regular basepoint at distance radius / 4 from `critical`.
inline InertiaReport inertia_report(const ParamFamily& fam, const Point& critical, double radius,
                                    const TrackOptions& opts = {}, std::uint64_t seed = 0) {
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    if (static_cast<int>(critical.size()) != fam.m) throw DomainError("parameter point must have length m");
    std::mt19937_64 eng(seed);
    InertiaReport r;
    r.basepoint = detail::axpy(critical, 0.25 * radius, detail::random_direction(eng, fam.m));
    const Point dir = detail::random_direction(eng, fam.m);
    try {
        r.roots = detail::labelled_roots(instantiate(fam, r.basepoint));
    } catch (const DomainError&) {
        throw DomainError("radius too small/degenerate stratum");
    }
    LineRestriction line;
    try {
        line = restrict_to_line(fam, r.basepoint, dir, radius, true);
    } catch (const DomainError&) {
        throw DomainError("radius too small/degenerate stratum");
    }
    r.critical = line.critical;
    r.loops = detail::lassos(line);
    for (const auto& loop : r.loops) r.permutations.push_back(track_loop(fam, loop, opts));
    r.group = closure(r.permutations, fam.n);
    return r;
}

inline PermGroup inertia_group(const ParamFamily& fam, const Point& critical, double radius,
                               const TrackOptions& opts = {}, std::uint64_t seed = 0) {
    return inertia_report(fam, critical, radius, opts, seed).group;
}

// Smallest subgroup of `ambient` containing `gens` and closed under
// conjugation by `ambient`.
inline PermGroup normal_closure(const std::vector<Permutation>& gens, const PermGroup& ambient) {
    std::vector<Permutation> conj;
    for (const auto& g : ambient.elements)
        for (const auto& h : gens) conj.push_back(g * h * g.inverse());
    std::sort(conj.begin(), conj.end());
    conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
    return closure(conj, ambient.n);
}

struct TheoremCheck {
    bool holds = false;
    std::size_t inertia_order = 0;
    std::size_t monodromy_order = 0;
};

// Inertia loops at each sample are tethered to the global basepoint by a
// straight path. Varying the tether runs over the conjugates of one inertia
// group, so the comparison uses the normal closure inside the monodromy group.
inline TheoremCheck verify_monodromy_theorem(const ParamFamily& fam, const std::vector<Point>& strata_points,
                                             double radius, const TrackOptions& opts = {}, std::uint64_t seed = 0) {
    const Point base = random_basepoint(fam, seed);
    auto mono = monodromy_report(fam, base, opts, seed);
    std::vector<Permutation> tethered;
    std::uint64_t local_seed = seed;
    for (const auto& pt : strata_points) {
        auto local = inertia_report(fam, pt, radius, opts, ++local_seed);
        for (const auto& loop : local.loops) {
            Loop t;
            t.basepoint = base;
            t.waypoints.push_back(base);
            t.waypoints.insert(t.waypoints.end(), loop.waypoints.begin(), loop.waypoints.end());
            t.waypoints.push_back(base);
            tethered.push_back(track_loop(fam, t, opts));
        }
    }
    TheoremCheck out;
    out.monodromy_order = mono.group.order();
    out.inertia_order = normal_closure(tethered, mono.group).order();
    out.holds = out.inertia_order == out.monodromy_order;
    return out;
}

// CSV of a tracking trace for m parameters and n roots: step, segment, t,
// then re/im of each parameter and root. An empty trace gives the header only.
inline void emit_plot_data(const std::vector<TraceRow>& trace, int m, int n, std::ostream& out) {
    out << "step,segment,t";
    for (int k = 1; k <= m; ++k) out << ",alpha" << k << "_re,alpha" << k << "_im";
    for (int k = 1; k <= n; ++k) out << ",root" << k << "_re,root" << k << "_im";
    out << '\n';
    const auto old = out.precision(17);
    for (std::size_t step = 0; step < trace.size(); ++step) {
        const auto& row = trace[step];
        out << step << ',' << row.segment << ',' << row.t;
        for (auto v : row.alpha) out << ',' << v.real() << ',' << v.imag();
        for (auto v : row.roots) out << ',' << v.real() << ',' << v.imag();
        out << '\n';
    }
    out.precision(old);
}

} // namespace resolvent
