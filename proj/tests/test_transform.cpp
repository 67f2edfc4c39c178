#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "resolvent/transform.hpp"

using namespace resolvent;

namespace {

RationalPoly rp(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return RationalPoly(v);
}

// Greedy nearest matching of two multisets; returns the worst distance.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (auto z : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](Complex u, Complex v) { return std::abs(u - z) < std::abs(v - z); });
        worst = std::max(worst, std::abs(*it - z));
        b.erase(it);
    }
    return worst;
}

ComplexPoly random_monic(std::mt19937_64& eng, int n) {
    std::vector<Complex> c;
    for (int k = 0; k < n; ++k) c.push_back(random_in_disk(eng));
    c.push_back(1.0);
    return ComplexPoly(c);
}

std::vector<Complex> images(const ComplexPoly& f, const ComplexPoly& phi) {
    std::vector<Complex> out;
    for (auto x : aberth_roots(f)) out.push_back(poly_eval(phi, x));
    return out;
}

} // namespace

TEST(Tschirnhaus, IdentityMapReturnsInput) {
    auto f = rp({3, -2, 0, 1});
    EXPECT_EQ(tschirnhaus(f, TschirnhausMap<Rational>(rp({0, 1}))), f);
}

TEST(Tschirnhaus, SquaringCollapsesPlusMinusRoots) {
    // deg phi = deg f here, so the operation itself refuses; x^2 mod f is the
    // constant 2, which is what makes the image a double root.
    auto f = rp({-2, 0, 1});
    try {
        tschirnhaus(f, TschirnhausMap<Rational>(rp({0, 0, 1})));
        FAIL() << "expected reduce-modulo error";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("reduce modulo f"), std::string::npos);
    }
    EXPECT_EQ(rp({0, 0, 1}) % f, rp({2}));
    // direct resultant Res_x(f, y - x^2) sampled at y = 0..2
    for (long y = 0; y <= 2; ++y)
        EXPECT_EQ(resultant(f, rp({y, 0, -1})), Rational((y - 2) * (y - 2)));
}

TEST(Tschirnhaus, SquaresOfCubeRootsOfTwo) {
    auto f = rp({-2, 0, 0, 1});
    auto F = tschirnhaus(f, TschirnhausMap<Rational>(rp({0, 0, 1})));
    // oracle: numeric images of the numeric roots
    auto want = images(to_complex(f), to_complex(rp({0, 0, 1})));
    EXPECT_LT(multiset_distance(find_roots(F, 1e-12).expanded(), want), 1e-12);
    EXPECT_EQ(F, rp({-4, 0, 0, 1}));
}

TEST(Tschirnhaus, Errors) {
    EXPECT_THROW(tschirnhaus(rp({1, 0, 2}), TschirnhausMap<Rational>(rp({0, 1}))), DomainError);
    EXPECT_THROW(tschirnhaus(rp({1, 0, 1}), TschirnhausMap<Rational>(rp({0, 0, 1}))), DomainError);
    EXPECT_THROW(TschirnhausMap<Rational>(rp({5})), DomainError);
}

TEST(Tschirnhaus, RootImagePropertyOnRandomInstances) {
    std::mt19937_64 eng(21);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(eng() % 5);
        auto f = random_monic(eng, n);
        int d = 1 + static_cast<int>(eng() % static_cast<std::uint64_t>(n - 1));
        std::vector<Complex> pc;
        for (int k = 0; k <= d; ++k) pc.push_back(random_in_disk(eng));
        if (std::abs(pc.back()) < 0.1) pc.back() = 1.0;
        ComplexPoly phi(pc);
        auto F = tschirnhaus(f, TschirnhausMap<Complex>(phi));
        EXPECT_EQ(F.degree(), n);
        EXPECT_LT(multiset_distance(aberth_roots(F), images(f, phi)), 1e-8) << trial;
    }
}

TEST(Tschirnhaus, CompositionIsExactOverRationals) {
    std::mt19937_64 eng(4);
    auto small = [&] { return Rational(static_cast<long>(eng() % 7) - 3); };
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(eng() % 2);
        std::vector<Rational> fc, p1, p2;
        for (int k = 0; k < n; ++k) fc.push_back(small());
        fc.emplace_back(1);
        RationalPoly f(fc);
        for (int k = 0; k < n; ++k) p1.push_back(small());
        for (int k = 0; k < n; ++k) p2.push_back(small());
        RationalPoly phi1(p1), phi2(p2);
        if (phi1.degree() < 1 || phi2.degree() < 1) continue;
        auto composite = compose(phi2, phi1) % f;
        if (composite.degree() < 1) continue;
        auto direct = tschirnhaus(f, TschirnhausMap<Rational>(composite));
        auto staged = tschirnhaus(tschirnhaus(f, TschirnhausMap<Rational>(phi1)), TschirnhausMap<Rational>(phi2));
        EXPECT_EQ(direct, staged) << trial;
    }
}

TEST(Tschirnhaus, CompositionNumerically) {
    std::mt19937_64 eng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_monic(eng, 4);
        ComplexPoly phi1({random_in_disk(eng), random_in_disk(eng), 1.0});
        ComplexPoly phi2({random_in_disk(eng), 1.0, random_in_disk(eng)});
        auto composite = compose(phi2, phi1) % f;
        auto direct = tschirnhaus(f, TschirnhausMap<Complex>(composite));
        auto staged = tschirnhaus(tschirnhaus(f, TschirnhausMap<Complex>(phi1)), TschirnhausMap<Complex>(phi2));
        for (int k = 0; k <= 4; ++k) EXPECT_LT(std::abs(direct.coeff(k) - staged.coeff(k)), 1e-8) << trial;
    }
}

TEST(RecoverRoot, Examples) {
    auto f = rp({-2, 0, 1});
    Complex x = recover_root(f, TschirnhausMap<Rational>(rp({0, 0, 0, 1})), Complex(2 * std::sqrt(2.0), 0), 1e-9);
    EXPECT_NEAR(std::abs(x - std::sqrt(2.0)), 0.0, 1e-12);

    auto g = rp({1, -3, 0, 1});
    for (auto r : find_roots(g, 1e-12).roots)
        EXPECT_NEAR(std::abs(recover_root(g, TschirnhausMap<Rational>(rp({0, 1})), r, 1e-9) - r), 0.0, 1e-12);

    try {
        recover_root(f, TschirnhausMap<Rational>(rp({0, 0, 1})), Complex(2, 0), 1e-9);
        FAIL() << "expected ambiguity";
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "ambiguous preimage");
    }
    EXPECT_THROW(recover_root(f, TschirnhausMap<Rational>(rp({0, 1})), Complex(5, 0), 1e-9), DomainError);
}

TEST(Depress, Examples) {
    auto [d1, s1] = depress(rp({1, 2, 1}));
    EXPECT_EQ(d1, rp({0, 0, 1}));
    EXPECT_EQ(s1, Rational(1));

    auto already = rp({1, 3, 0, 1});
    auto [d2, s2] = depress(already);
    EXPECT_EQ(d2, already);
    EXPECT_EQ(s2, Rational(0));

    auto f = rp({1, 0, 0, 0, 5, 1});
    auto [d3, s3] = depress(f);
    EXPECT_EQ(d3.coeff(4), Rational(0));
    EXPECT_EQ(s3, Rational(1));
    // oracle: roots shifted by +1 via the resultant route
    EXPECT_EQ(d3, tschirnhaus(f, TschirnhausMap<Rational>(rp({1, 1}))));
}

TEST(BringJerrard, AlreadyInNormalForm) {
    auto r = bring_jerrard(rp({1, 1, 0, 0, 0, 1}), 1e-9);
    EXPECT_EQ(r.p, Complex(1, 0));
    EXPECT_EQ(r.q, Complex(1, 0));
    EXPECT_EQ(r.map.phi, ComplexPoly({0.0, 1.0}));
    EXPECT_EQ(r.residuals, 0.0);
}

TEST(BringJerrard, RepeatedRootExampleIsDegenerate) {
    // x^5 - 5x^3 + 5x - 2 = (x - 2)(x^2 + x - 1)^2
    auto f = rp({-2, 5, 0, -5, 0, 1});
    EXPECT_EQ(discriminant(f), Rational(0));
    try {
        bring_jerrard(f, 1e-9);
        FAIL() << "expected degenerate quintic";
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "degenerate quintic");
    }
    EXPECT_THROW(bring_jerrard(pow(rp({-1, 1}), 2) * rp({1, 0, 1, 1}), 1e-9), DomainError);
}

TEST(BringJerrard, RoundTripOnChebyshevNeighbour) {
    auto f = rp({-3, 5, 0, -5, 0, 1});
    auto r = bring_jerrard(f, 1e-9);
    EXPECT_LT(r.residuals, 1e-9);
    EXPECT_LE(r.map.phi.degree(), 4);
    ComplexPoly F({r.q, r.p, 0.0, 0.0, 0.0, 1.0});
    auto want = images(to_complex(f), r.map.phi);
    EXPECT_LT(multiset_distance(aberth_roots(F), want), 1e-8);
    for (auto y : aberth_roots(F)) {
        Complex x = recover_root(f, TschirnhausMap<Rational>(rp({0, 1})), recover_root(to_complex(f), r.map, y, 1e-7), 1e-7);
        EXPECT_NEAR(std::abs(poly_eval(f, x)), 0.0, 1e-9);
    }
}

TEST(BringJerrard, RandomQuinticsRoundTrip) {
    std::mt19937_64 eng(99);
    int done = 0;
    while (done < 100) {
        auto f = random_monic(eng, 5);
        if (std::abs(discriminant(f)) <= 1e-6) continue;
        ++done;
        auto r = bring_jerrard(f, 1e-9);
        EXPECT_LT(r.residuals, 1e-9);
        ComplexPoly F({r.q, r.p, 0.0, 0.0, 0.0, 1.0});
        auto ys = aberth_roots(F);
        EXPECT_LT(multiset_distance(ys, images(f, r.map.phi)), 1e-8);
        for (auto y : ys) EXPECT_NO_THROW(recover_root(f, r.map, y, 1e-8));
    }
}

TEST(OneParamNormalize, Examples) {
    auto a = one_param_normalize(1.0, 1.0);
    EXPECT_NEAR(std::abs(a.c - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.scale - 1.0), 0.0, 1e-15);

    auto b = one_param_normalize(0.0, 32.0);
    EXPECT_EQ(b.c, Complex(0, 0));
    EXPECT_NEAR(std::abs(b.scale - 2.0), 0.0, 1e-14);
    for (auto z : aberth_roots(ComplexPoly({1.0, 0, 0, 0, 0, 1.0})))
        EXPECT_NEAR(std::abs(std::pow(b.scale * z, 5) + 32.0), 0.0, 1e-12);

    auto c = one_param_normalize(2.0, -1.0);
    Complex principal = std::polar(1.0, kPi / 5);
    EXPECT_NEAR(std::abs(c.scale - principal), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.c - 2.0 / std::pow(principal, 4)), 0.0, 1e-14);
    for (auto z : aberth_roots(ComplexPoly({1.0, c.c, 0, 0, 0, 1.0}))) {
        Complex y = c.scale * z;
        EXPECT_LT(std::abs(std::pow(y, 5) + 2.0 * y - 1.0), 1e-12);
    }
    EXPECT_THROW(one_param_normalize(1.0, 0.0), DomainError);
}

TEST(OneParamNormalize, ScalingContractOnRandomInputs) {
    std::mt19937_64 eng(123);
    for (int trial = 0; trial < 100; ++trial) {
        Complex p = random_in_disk(eng, 3.0);
        Complex q = random_in_disk(eng, 3.0);
        if (std::abs(q) < 1e-3) continue;
        auto form = one_param_normalize(p, q);
        EXPECT_LT(std::abs(std::pow(form.scale, 5) - q), 1e-12 * std::abs(q));
        for (auto z : aberth_roots(ComplexPoly({1.0, form.c, 0, 0, 0, 1.0}))) {
            Complex y = form.scale * z;
            EXPECT_LT(std::abs(std::pow(y, 5) + p * y + q), 1e-9) << trial;
        }
    }
}

TEST(KleinFamily, Examples) {
    auto k0 = klein_family(0.0);
    EXPECT_EQ(k0, ComplexPoly({0, 0, 0, 0, 15.0, 1.0}));
    auto r0 = find_roots(k0, 1e-9);
    ASSERT_EQ(r0.roots.size(), 2u);
    EXPECT_NEAR(std::abs(r0.roots[0] + 15.0), 0.0, 1e-12);
    EXPECT_EQ(r0.multiplicities, (std::vector<int>{1, 4}));

    auto k1 = klein_family(1.0);
    EXPECT_EQ(k1, ComplexPoly({3.0, 0, -10.0, 0, 15.0, 1.0}));
    // oracle: prod_{i<j} (r_i - r_j)^2 from the numeric roots
    auto rs = aberth_roots(k1);
    Complex brute(1.0, 0.0);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j) brute *= (rs[i] - rs[j]) * (rs[i] - rs[j]);
    Complex d = discriminant(k1);
    EXPECT_GT(std::abs(d), 1.0);
    EXPECT_LT(std::abs(d - brute), 1e-6 * std::abs(d));

    // one parameter: coefficients 3g^2 and -10g only
    auto kg = klein_family(Complex(0.3, -0.2));
    EXPECT_EQ(kg.coeff(1), Complex(0, 0));
    EXPECT_EQ(kg.coeff(3), Complex(0, 0));
    EXPECT_EQ(kg.coeff(4), Complex(15, 0));
}
