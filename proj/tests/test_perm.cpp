#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "resolvent/perm.hpp"

using namespace resolvent;

namespace {

Permutation cyc(std::string_view s, int n) { return Permutation::parse(s, n); }

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

Permutation random_permutation(std::mt19937_64& eng, int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(im[static_cast<std::size_t>(i)], im[eng() % static_cast<std::uint64_t>(i + 1)]);
    return Permutation(im);
}

} // namespace

TEST(Permutation, CycleNotationRoundTrip) {
    EXPECT_EQ(cyc("(1 2 3)(4 5)", 6).to_string(), "(1 2 3)(4 5)");
    EXPECT_EQ(cyc("()", 4).to_string(), "()");
    EXPECT_EQ(cyc("(3 1 2)", 3).to_string(), "(1 2 3)");
    EXPECT_THROW(cyc("(1 2", 3), ParseError);
    EXPECT_THROW(cyc("(1 4)", 3), ParseError);
    EXPECT_THROW(cyc("(1 2)(2 3)", 3), ParseError);
}

TEST(Permutation, CompositionAppliesRightFactorFirst) {
    auto a = cyc("(1 2)", 3);
    auto b = cyc("(2 3)", 3);
    // (a*b)(1) = a(b(1)) = a(1) = 2
    EXPECT_EQ((a * b)(0), 1);
    EXPECT_EQ((a * b).to_string(), "(1 2 3)");
    EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(CycleCount, Examples) {
    EXPECT_EQ(cycle_count(Permutation::identity(5)), 5);
    EXPECT_EQ(cycle_count(cyc("(1 2 3)", 5)), 3);
    EXPECT_EQ(cycle_count(cyc("(1 2 3 4 5)", 5)), 1);
}

TEST(Parity, Examples) {
    EXPECT_EQ(parity(cyc("(1 2)", 4)), Parity::odd);
    EXPECT_EQ(parity(cyc("(1 2 3)", 4)), Parity::even);
    EXPECT_EQ(parity(cyc("(1 2)(3 4)", 4)), Parity::even);
}

TEST(CoincidencePartition, Examples) {
    EXPECT_EQ(coincidence_partition(cyc("(1 2 3)", 5)).to_string(), "{1,2,3}{4}{5}");
    EXPECT_EQ(coincidence_partition(Permutation::identity(3)).to_string(), "{1}{2}{3}");
    EXPECT_EQ(coincidence_partition(cyc("(1 2 3 4 5)(6 7)", 7)).to_string(), "{1,2,3,4,5}{6,7}");
}

TEST(SetPartition, Parsing) {
    EXPECT_EQ(SetPartition::parse("{12}{3}", 3).to_string(), "{1,2}{3}");
    EXPECT_EQ(SetPartition::parse("{1, 2}{3}", 3).to_string(), "{1,2}{3}");
    EXPECT_EQ(SetPartition::parse("{3}{2,1}", 3).to_string(), "{1,2}{3}");
    EXPECT_THROW(SetPartition::parse("{1,2}", 3), ParseError);
    EXPECT_THROW(SetPartition::parse("{1,2}{2,3}", 3), ParseError);
}

TEST(HeightOrder, Examples) {
    EXPECT_TRUE(height_lt(cyc("(1 2 3)", 5), cyc("(1 2 3 4 5)", 5)));
    EXPECT_FALSE(height_lt(cyc("(1 2 3)", 5), cyc("(1 4 5)", 5)));
    auto s = cyc("(1 2 3)", 5);
    EXPECT_FALSE(height_lt(s, s));
    EXPECT_THROW(height_lt(cyc("(1 2)", 3), cyc("(1 2)", 4)), DomainError);
}

TEST(HeightOrder, StrictPartialOrderOnRandomTriples) {
    std::mt19937_64 eng(2);
    int transitive_checks = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        int n = 3 + static_cast<int>(eng() % 4);
        auto a = random_permutation(eng, n);
        auto b = random_permutation(eng, n);
        auto c = random_permutation(eng, n);
        EXPECT_FALSE(height_lt(a, a));
        if (height_lt(a, b) && height_lt(b, c)) {
            EXPECT_TRUE(height_lt(a, c));
            ++transitive_checks;
        }
        if (height_lt(a, b)) EXPECT_FALSE(height_lt(b, a));
    }
    EXPECT_GT(transitive_checks, 0);
}

TEST(HeightOrder, StepDropsCycleCountAndEvenStepsDropByTwo) {
    for (int n = 2; n <= 6; ++n) {
        auto all = all_permutations(n);
        for (const auto& s : all)
            for (const auto& t : all) {
                if (!height_lt(s, t)) continue;
                ASSERT_LT(cycle_count(t), cycle_count(s));
                if (parity(s) == Parity::even && parity(t) == Parity::even)
                    ASSERT_GE(cycle_count(s) - cycle_count(t), 2);
            }
    }
}

TEST(Parity, EvenPermutationsHaveCycleCountOfSameParityAsN) {
    for (int n = 1; n <= 7; ++n)
        for (const auto& s : all_permutations(n))
            if (parity(s) == Parity::even) ASSERT_EQ((cycle_count(s) - n) % 2, 0);
}

TEST(MaxChain, Examples) {
    auto five = max_chain(5, true);
    EXPECT_EQ(five.length, 2);
    ASSERT_EQ(five.witness.size(), 2u);
    EXPECT_EQ(five.witness[0].to_string(), "{1,2,3}{4}{5}");
    EXPECT_EQ(five.witness[1].to_string(), "{1,2,3,4,5}");
    EXPECT_EQ(max_chain(9, true).length, 4);
    EXPECT_EQ(max_chain(3, true).length, 1);
    EXPECT_THROW(max_chain(2, true), DomainError);
}

TEST(MaxChain, WitnessIsTheOddCycleChain) {
    auto seven = max_chain(7, true);
    ASSERT_EQ(seven.length, 3);
    EXPECT_EQ(seven.witness[0].to_string(), "{1,2,3}{4}{5}{6}{7}");
    EXPECT_EQ(seven.witness[1].to_string(), "{1,2,3,4,5}{6}{7}");
    EXPECT_EQ(seven.witness[2].to_string(), "{1,2,3,4,5,6,7}");
}

TEST(MaxChain, EqualsFloorFormulaForSmallDegrees) {
    for (int n = 3; n <= 9; ++n) {
        auto r = max_chain(n, true);
        EXPECT_EQ(r.length, chebotarev_bound(n)) << n;
        ASSERT_EQ(static_cast<int>(r.witness.size()), r.length);
        for (std::size_t k = 0; k + 1 < r.witness.size(); ++k) {
            EXPECT_TRUE(r.witness[k].refines(r.witness[k + 1]));
            EXPECT_NE(r.witness[k], r.witness[k + 1]);
        }
        for (const auto& p : r.witness) EXPECT_EQ((n - p.block_count()) % 2, 0);
    }
}

TEST(MaxChain, OddAllowedChainsUseEveryBlockCount) {
    // bottom excludes identity and transpositions; blocks n-2, ..., 1
    for (int n = 3; n <= 7; ++n) EXPECT_EQ(max_chain(n, false).length, n - 2);
}

TEST(FormulaBound, TableValues) {
    EXPECT_EQ(chebotarev_bound(5), 2);
    EXPECT_EQ(chebotarev_bound(6), 2);
    EXPECT_EQ(chebotarev_bound(7), 3);
    EXPECT_EQ(chebotarev_bound(8), 3);
    EXPECT_EQ(chebotarev_bound(9), 4);
    EXPECT_EQ(chebotarev_bound(3), 1);
    EXPECT_THROW(chebotarev_bound(2), DomainError);
}

TEST(Closure, Orders) {
    EXPECT_EQ(closure({cyc("(1 2)", 2)}, 2).order(), 2u);
    EXPECT_EQ(closure({cyc("(1 2)", 5), cyc("(1 2 3 4 5)", 5)}, 5).order(), 120u);
    EXPECT_EQ(closure({cyc("(1 2 3)", 5), cyc("(3 4 5)", 5)}, 5).order(), 60u);
    EXPECT_EQ(closure(std::vector<Permutation>{}, 4).order(), 1u);
    EXPECT_THROW(closure(symmetric_generators(6), 6, 100), DomainError);
}

TEST(Closure, OrderMatchesBruteForceCount) {
    // oracle: count permutations of S_5 that are even
    int even = 0;
    for (const auto& s : all_permutations(5)) even += parity(s) == Parity::even;
    EXPECT_EQ(closure(alternating_generators(5), 5).order(), static_cast<std::size_t>(even));
}

TEST(Closure, OutputIsClosedUnderProducts) {
    auto g = closure({cyc("(1 2 3)", 5), cyc("(3 4 5)", 5)}, 5);
    std::mt19937_64 eng(9);
    for (int k = 0; k < 500; ++k) {
        const auto& a = g.elements[eng() % g.order()];
        const auto& b = g.elements[eng() % g.order()];
        EXPECT_TRUE(g.contains(a * b));
        EXPECT_TRUE(g.contains(a.inverse()));
    }
}

TEST(Transitivity, Examples) {
    EXPECT_TRUE(is_transitive(closure(symmetric_generators(3), 3)));
    EXPECT_FALSE(is_transitive(closure({cyc("(1 2)", 3)}, 3)));
    EXPECT_TRUE(is_transitive(closure({cyc("(1 2 3)", 5), cyc("(3 4 5)", 5)}, 5)));
}
