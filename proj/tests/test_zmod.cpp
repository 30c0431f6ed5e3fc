#include <catch_amalgamated.hpp>

#include "test_support.hpp"
#include "xdelta/zmod.hpp"

using namespace xdelta;

TEST_CASE("units of small moduli") {
    CHECK(units(Level(8)) == std::vector<long>{1, 3, 5, 7});
    CHECK(units(Level(2)) == std::vector<long>{1});
    CHECK(units(Level(1)).empty());
    const auto u37 = units(Level(37));
    REQUIRE(u37.size() == 36);
    CHECK(u37.front() == 1);
    CHECK(u37.back() == 36);
}

TEST_CASE("subgroup closure") {
    CHECK(testsup::delta_of(24, {5}).residues() == std::vector<long>{1, 5, 19, 23});
    CHECK(testsup::delta_of(10, {}).residues() == std::vector<long>{1, 9});
    // 6^2 = -1 mod 37, so 6 together with -1 generates the order-4 subgroup
    CHECK(testsup::delta_of(37, {6}).residues() == std::vector<long>{1, 6, 31, 36});
    // 8 has order 12 mod 37
    CHECK(testsup::delta_of(37, {8}).residues() ==
          std::vector<long>{1, 6, 8, 10, 11, 14, 23, 26, 27, 29, 31, 36});
    CHECK_THROWS_AS(DeltaSubgroup::closure(Level(24), {6}), UsageError);
    CHECK_THROWS_WITH(DeltaSubgroup::closure(Level(24), {6}),
                      Catch::Matchers::ContainsSubstring("NonUnitGenerator"));
}

TEST_CASE("from_residues validates") {
    CHECK_NOTHROW(DeltaSubgroup::from_residues(Level(26), {1, 5, 21, 25}));
    // not closed under multiplication
    CHECK_THROWS_AS(DeltaSubgroup::from_residues(Level(26), {1, 5, 25}), UsageError);
    // missing -1
    CHECK_THROWS_AS(DeltaSubgroup::from_residues(Level(13), {1, 3, 9}), UsageError);
}

TEST_CASE("enumerate_delta_subgroups for 37") {
    const auto all = enumerate_delta_subgroups(Level(37));
    std::vector<long> proper_orders;
    for (const auto& d : all)
        if (!d.is_trivial() && !d.is_full()) proper_orders.push_back(d.order());
    CHECK(proper_orders == std::vector<long>{4, 6, 12, 18});
    CHECK(all.front().is_trivial());
    CHECK(all.back().is_full());
}

TEST_CASE("levels without proper nontrivial subgroups") {
    for (long n : {14L, 18L, 22L, 23L})
        CHECK(proper_nontrivial_subgroups(Level(n)).empty());
    for (long n = 3; n <= 12; ++n)
        CHECK(proper_nontrivial_subgroups(Level(n)).empty());
}

TEST_CASE("subgroup invariants across levels") {
    for (long n = 3; n <= 60; ++n) {
        const long phi = euler_phi(n);
        const auto subs = enumerate_delta_subgroups(Level(n));
        for (const auto& d : subs) {
            // Lagrange
            CHECK(phi % d.order() == 0);
            CHECK(d.contains(1));
            CHECK(d.contains(-1));
            // closed under multiplication, exhaustively
            for (long a : d.residues())
                for (long b : d.residues()) CHECK(d.contains(a * b % n));
            auto rs = d.residues();
            CHECK(std::is_sorted(rs.begin(), rs.end()));
            CHECK(std::adjacent_find(rs.begin(), rs.end()) == rs.end());
        }
        // determinism
        const auto again = enumerate_delta_subgroups(Level(n));
        REQUIRE(again.size() == subs.size());
        for (std::size_t i = 0; i < subs.size(); ++i)
            CHECK(again[i].residues() == subs[i].residues());
    }
}

TEST_CASE("cyclic count cross-check for odd primes") {
    // (Z/pZ)^x is cyclic, so subgroups containing -1 correspond to the even
    // divisors of p - 1
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L,
                   43L, 47L, 53L, 59L, 61L, 67L, 71L, 73L, 79L, 83L, 89L, 97L}) {
        long even_divisors = 0;
        for (long d = 1; d <= p - 1; ++d)
            if ((p - 1) % d == 0 && d % 2 == 0) ++even_divisors;
        CHECK(static_cast<long>(enumerate_delta_subgroups(Level(p)).size()) ==
              even_divisors);
    }
}
