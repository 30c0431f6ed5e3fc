#include <catch_amalgamated.hpp>

#include "test_support.hpp"
#include "xdelta/cosets.hpp"

using namespace xdelta;

namespace {

DeltaSubgroup full_group(long n) {
    return DeltaSubgroup::closure(Level(n), units(Level(n)));
}

// classical closed forms for Gamma_0(N), used as an independent oracle
struct Gamma0Oracle {
    long mu, nu2, nu3, cusps;
};

long legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    long r = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == p - 1 ? -1 : r;
}

Gamma0Oracle gamma0_oracle(long n) {
    Gamma0Oracle o{n, 1, 1, 0};
    std::vector<long> primes;
    long m = n;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) primes.push_back(m);
    for (long p : primes) o.mu = o.mu / p * (p + 1);
    if (n % 4 == 0) {
        o.nu2 = 0;
    } else {
        for (long p : primes)
            if (p != 2) o.nu2 *= 1 + legendre(-1, p);
    }
    if (n % 9 == 0) {
        o.nu3 = 0;
    } else {
        for (long p : primes) {
            if (p == 3) continue;
            o.nu3 *= 1 + legendre(-3, p);
        }
    }
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) o.cusps += euler_phi(std::gcd(d, n / d));
    return o;
}

} // namespace

TEST_CASE("coset space sizes") {
    CHECK(build_coset_space(Level(37), full_group(37)).index() == 38);
    CHECK(build_coset_space(Level(26), testsup::delta_of(26, {5})).index() == 126);
    const auto one = build_coset_space(Level(1), DeltaSubgroup::closure(Level(1), {}));
    REQUIRE(one.index() == 1);
    CHECK(one.sigma_s == std::vector<int>{0});
    CHECK(one.sigma_t == std::vector<int>{0});
    CHECK(one.sigma_r == std::vector<int>{0});
}

TEST_CASE("genus for pinned table rows") {
    struct Row { long n; std::initializer_list<long> gens; long genus; };
    const Row rows[] = {
        {26, {5}, 4}, {13, {5}, 0}, {64, {31}, 37}, {21, {8}, 3},
        {29, {12}, 8}, {37, {6}, 16}, {37, {10}, 10}, {81, {8}, 10},
        {43, {2}, 9}, {50, {7}, 22},
    };
    for (const Row& row : rows) {
        const auto inv = curve_invariants(
            build_coset_space(Level(row.n), testsup::delta_of(row.n, row.gens)));
        INFO("N = " << row.n);
        CHECK(inv.genus == row.genus);
    }
}

TEST_CASE("invariants for the level-26 order-4 subgroup") {
    const auto inv =
        curve_invariants(build_coset_space(Level(26), testsup::delta_of(26, {5})));
    CHECK(inv.mu == 126);
    CHECK(inv.nu2 == 6);
    CHECK(inv.nu3 == 0);
    CHECK(inv.nu_inf == 12);
    CHECK(inv.genus == 4);
}

TEST_CASE("covering degrees") {
    const auto c1 = covering_degrees(Level(37), testsup::delta_of(37, {10}));
    CHECK(c1.deg_x1_to_delta == 3);
    CHECK(c1.deg_delta_to_x0 == 6);
    CHECK(c1.deg_x0_to_plus == 2);

    const auto c2 = covering_degrees(Level(37), testsup::delta_of(37, {6}));
    CHECK(c2.deg_x1_to_delta == 2);
    CHECK(c2.deg_delta_to_x0 == 9);
    CHECK(c2.deg_x1_to_delta * c2.deg_delta_to_x0 * c2.deg_x0_to_plus == 36);

    const auto c3 = covering_degrees(Level(43), testsup::delta_of(43, {2}));
    CHECK(c3.deg_x1_to_delta == 7);
    CHECK(c3.deg_delta_to_x0 == 3);
    CHECK(c3.deg_delta_to_x0 * c3.deg_x0_to_plus == 6);

    // product identity phi(N)/2
    for (long n = 3; n <= 40; ++n)
        for (const auto& d : enumerate_delta_subgroups(Level(n))) {
            const auto chain = covering_degrees(Level(n), d);
            CHECK(chain.deg_x1_to_delta * chain.deg_delta_to_x0 == euler_phi(n) / 2);
        }
}

TEST_CASE("group relations and index multiplicativity") {
    for (long n = 1; n <= 50; ++n) {
        std::vector<DeltaSubgroup> subs;
        if (n >= 3)
            subs = enumerate_delta_subgroups(Level(n));
        else
            subs.push_back(DeltaSubgroup::closure(Level(n), {}));
        const long mu0 = build_coset_space(Level(n), full_group(n)).index();
        for (const auto& d : subs) {
            const auto space = build_coset_space(Level(n), d);
            const long m = space.index();
            for (long i = 0; i < m; ++i) {
                CHECK(space.sigma_s[space.sigma_s[i]] == i);
                CHECK(space.sigma_r[space.sigma_r[space.sigma_r[i]]] == i);
            }
            if (n >= 3) {
                const auto chain = covering_degrees(Level(n), d);
                CHECK(m == mu0 * chain.deg_delta_to_x0);
            }
        }
    }
}

TEST_CASE("full group reproduces the classical Gamma_0 invariants") {
    for (long n = 2; n <= 100; ++n) {
        const auto inv = curve_invariants(build_coset_space(Level(n), full_group(n)));
        const Gamma0Oracle o = gamma0_oracle(n);
        INFO("N = " << n);
        CHECK(inv.mu == o.mu);
        CHECK(inv.nu2 == o.nu2);
        CHECK(inv.nu3 == o.nu3);
        CHECK(inv.nu_inf == o.cusps);
    }
}

TEST_CASE("labels are canonical and sorted") {
    const auto space = build_coset_space(Level(24), testsup::delta_of(24, {5}));
    CHECK(std::is_sorted(space.labels.begin(), space.labels.end()));
    for (const auto& [c, d] : space.labels) {
        CHECK(c >= 0);
        CHECK(c < 24);
        CHECK(d >= 0);
        CHECK(d < 24);
    }
}
