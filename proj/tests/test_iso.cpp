#include "oracles.hpp"
#include "retentive7.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace tourn;
using tourn::testing::labeled;
using tourn::testing::permutation_key;

TEST(CanonicalKey, ThreeCycleInvariantUnderAllRelabelings)
{
    auto c = parse("010");
    std::array<int, 3> order{0, 1, 2};
    std::set<std::string> keys;
    do {
        keys.insert(canonical_key(permuted(c, order)).code());
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(keys.size(), 1u);
}

TEST(CanonicalKey, FrozenThreeVertexKeys)
{
    EXPECT_EQ(permutation_key(Tournament(3)), "000");
    EXPECT_EQ(canonical_key(Tournament(3)).code(), "000");
    EXPECT_EQ(permutation_key(parse("010")), "010");
    EXPECT_EQ(canonical_key(parse("101")).code(), "010");
}

TEST(CanonicalKey, TwoClassesOnThreeVertices)
{
    std::set<std::string> keys;
    for (std::uint64_t b = 0 ; b < 8 ; ++b)
        keys.insert(canonical_key(labeled(3, b)).code());
    EXPECT_EQ(keys.size(), 2u);
}

TEST(CanonicalKey, MatchesPermutationOracleOnAllLabeledUpToFive)
{
    for (int n = 1 ; n <= 5 ; ++n)
        for (std::uint64_t b = 0 ; b < (std::uint64_t{1} << (n * (n - 1) / 2)) ; ++b) {
            auto t = labeled(n, b);
            ASSERT_EQ(canonical_key(t).code(), permutation_key(t)) << serialize(t);
        }
}

TEST(CanonicalKey, MatchesPermutationOracleOnRandomSixAndSeven)
{
    std::mt19937_64 rng(21);
    for (int i = 0 ; i < 300 ; ++i) {
        auto t = random_tournament(6 + i % 2, rng);
        ASSERT_EQ(canonical_key(t).code(), permutation_key(t)) << serialize(t);
    }
}

TEST(CanonicalKey, InvariantUnderRandomRelabeling)
{
    std::mt19937_64 rng(22);
    for (int i = 0 ; i < 2000 ; ++i) {
        auto t = random_tournament(1 + i % 12, rng);
        ASSERT_EQ(canonical_key(t), canonical_key(random_relabeling(t, rng))) << serialize(t);
    }
}

TEST(CanonicalKey, RegularTournamentsWithLargeAutomorphismGroups)
{
    std::mt19937_64 rng(23);
    for (int n : {3, 5, 7, 9, 11, 13, 15}) {
        auto r = tourn::testing::rotational(n);
        auto key = canonical_key(r);
        for (int i = 0 ; i < 20 ; ++i)
            EXPECT_EQ(canonical_key(random_relabeling(r, rng)), key) << n;
    }
}

TEST(CanonicalForm, OrderRealisesTheKey)
{
    std::mt19937_64 rng(24);
    for (int i = 0 ; i < 500 ; ++i) {
        auto t = random_tournament(1 + i % 10, rng);
        auto form = canonical_form(t);
        std::vector<int> order(form.order.begin(), form.order.begin() + t.size());
        EXPECT_EQ(permuted(t, order), form.tournament);
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0 ; k < t.size() ; ++k)
            EXPECT_EQ(sorted[static_cast<std::size_t>(k)], k);
    }
}

TEST(CanonicalForm, PinnedFirstVertex)
{
    auto t = parse("010");
    for (int v = 0 ; v < 3 ; ++v)
        EXPECT_EQ(canonical_form(t, v).order[0], v);
}

TEST(Isomorphism, Examples)
{
    std::mt19937_64 rng(25);
    auto t = random_tournament(9, rng);
    EXPECT_TRUE(is_isomorphic(t, random_relabeling(t, rng)));
    EXPECT_FALSE(is_isomorphic(parse("010"), Tournament(3)));
    EXPECT_FALSE(is_isomorphic(Tournament(3), Tournament(4)));
}

TEST(Isomorphism, RetentiveSevenPairwiseDistinct)
{
    const auto & codes = tourn::testing::retentive7;
    for (std::size_t i = 0 ; i < codes.size() ; ++i)
        for (std::size_t j = i + 1 ; j < codes.size() ; ++j)
            EXPECT_FALSE(is_isomorphic(parse(codes[i]), parse(codes[j]))) << codes[i] << " " << codes[j];
}

TEST(Enumerate, ClassCounts)
{
    const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56, 456, 6880};
    for (int n = 1 ; n <= 8 ; ++n)
        EXPECT_EQ(enumerate(n).size(), expected[static_cast<std::size_t>(n - 1)]) << n;
}

TEST(Enumerate, IrreducibleFlagMatchesPartitionOracle)
{
    for (int n = 1 ; n <= 7 ; ++n) {
        auto all = enumerate(n);
        std::size_t expected = 0;
        for (const auto & t : all)
            expected += tourn::testing::irreducible_by_partitions(t);
        auto irr = enumerate(n, {true, 1});
        EXPECT_EQ(irr.size(), expected) << n;
        for (const auto & t : irr)
            EXPECT_TRUE(is_irreducible(t));
    }
}

TEST(Enumerate, OutputIsCanonicalSortedAndDistinct)
{
    for (int n = 1 ; n <= 7 ; ++n) {
        auto e = enumerate(n);
        std::set<std::string> seen;
        std::string previous;
        for (const auto & t : e) {
            auto code = serialize(t);
            EXPECT_EQ(canonical_key(t).code(), code);
            EXPECT_TRUE(seen.insert(code).second);
            EXPECT_TRUE(previous.empty() || previous < code);
            previous = code;
        }
    }
}

TEST(Enumerate, CoversEveryLabeledTournamentExactlyOnce)
{
    for (int n = 1 ; n <= 5 ; ++n) {
        std::map<std::string, int> hits;
        for (const auto & t : enumerate(n))
            hits[permutation_key(t)] = 0;
        std::set<std::string> oracle_classes;
        for (std::uint64_t b = 0 ; b < (std::uint64_t{1} << (n * (n - 1) / 2)) ; ++b) {
            auto key = permutation_key(labeled(n, b));
            oracle_classes.insert(key);
            auto it = hits.find(key);
            ASSERT_NE(it, hits.end()) << key;
            ++it->second;
        }
        EXPECT_EQ(oracle_classes.size(), hits.size()) << n;
    }
}

TEST(Enumerate, ParallelMatchesSerial)
{
    EXPECT_EQ(enumerate(7, {false, 3}), enumerate(7));
    EXPECT_EQ(enumerate(7, {true, 2}), enumerate(7, {true, 1}));
}

TEST(Enumerate, RejectsOutOfRange)
{
    EXPECT_THROW(enumerate(0), PreconditionError);
    EXPECT_THROW(enumerate(11), PreconditionError);
}

TEST(Enumerate, ForEachClassVisitsEveryClass)
{
    std::vector<std::vector<std::string>> seen(2);
    for_each_class(6, 2, [&](const Tournament & t, int worker) {
        seen[static_cast<std::size_t>(worker)].push_back(serialize(t));
    });
    std::vector<std::string> all;
    for (auto & s : seen)
        all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end());
    std::vector<std::string> expected;
    for (const auto & t : enumerate(6))
        expected.push_back(serialize(t));
    EXPECT_EQ(all, expected);
}
