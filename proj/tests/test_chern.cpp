#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kummer/chern.hpp"
#include "kummer/involution.hpp"
#include "kummer/lattice.hpp"

using namespace kummer;

namespace {

DivisorClass D(const std::string& expr) { return parse_divisor(expr); }

}  // namespace

TEST_CASE("bundle invariants of E0 + E12 + E13") {
    const auto inv = bundle_invariants(D("E0 + E12 + E13"));
    CHECK(inv.d2 == -6);
    CHECK(inv.c1sq == 0);
    CHECK(inv.c2 == 3);
    CHECK(inv.chi == -1);
    CHECK(inv.gap == 3);
    CHECK(inv.h0_lower == 0);
    CHECK(inv.dim_m_lower == 9);
    CHECK(inv.dim_p_upper == 8);
    CHECK(inv.rho1 == 7);
}

TEST_CASE("bundle invariants of a single node") {
    // D.theta(D) = (E0.T456) = 0
    const auto inv = bundle_invariants(D("E0"));
    CHECK(inv.d2 == -2);
    CHECK(inv.c1sq == -2);
    CHECK(inv.c2 == 0);
    CHECK(inv.chi == 1);
    CHECK(inv.gap == 1);
    CHECK(inv.h0_lower == 1);
    CHECK(inv.dim_m_lower == -1);  // 4*0 - (-2) - 3
    CHECK(inv.dim_p_upper == 0);   // 3*0 - (-1) - 1
    CHECK(inv.rho1 == -1);
}

TEST_CASE("bundle invariants of E12 + E13") {
    // D.theta(D) = E12.T3 + E12.T2 + E13.T3 + E13.T2 = 0+1+1+0 = 2
    const auto inv = bundle_invariants(D("E12 + E13"));
    CHECK(inv.d2 == -4);
    CHECK(inv.c1sq == -2);
    CHECK(inv.c2 == 1);
    CHECK(inv.chi == 0);
    CHECK(inv.gap == 2);
}

TEST_CASE("c1sq and c2 satisfy the pushforward identities") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<std::int64_t> dist(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        DivisorClass d;
        for (auto& c : d.coeffs) c = dist(rng);
        if (d.is_zero()) continue;
        const std::int64_t mixed = pair(d, theta(d));
        REQUIRE(mixed % 2 == 0);
        const auto inv = bundle_invariants(d);
        CHECK(inv.c1sq == inv.d2 + mixed);
        CHECK(inv.c2 == mixed / 2);
        CHECK(inv.c2 - inv.c1sq / 2 == -inv.d2 / 2);
        CHECK(inv.gap == inv.c2 - inv.c1sq / 2);
        CHECK(inv.chi == inv.d2 / 2 + 2);
        CHECK(inv.rho1 == inv.dim_m_lower - (1 - inv.chi));
    }
}

TEST_CASE("bundle invariants are theta-symmetric") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<std::int64_t> dist(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        DivisorClass d;
        for (auto& c : d.coeffs) c = dist(rng);
        if (d.is_zero()) continue;
        CHECK(bundle_invariants(d) == bundle_invariants(theta(d)));
    }
}

TEST_CASE("brill-noether number") {
    const auto inv = bundle_invariants(D("E0 + E12 + E13"));
    CHECK(bn_number(0, inv) == inv.dim_m_lower);
    CHECK(bn_number(1, inv) == 7);  // 9 - 1*(1 - (-1))
    CHECK(bn_number(1, bundle_invariants(D("E0"))) == -1);
}

TEST_CASE("gap check mirrors condition (iii)") {
    CHECK(theorem_gap_check(bundle_invariants(D("E0 + E12 + E13"))));
    CHECK_FALSE(theorem_gap_check(bundle_invariants(D("E0"))));
    CHECK_FALSE(theorem_gap_check(bundle_invariants(D("E12 + E13"))));  // gap 2, boundary

    std::mt19937 rng(41);
    std::uniform_int_distribution<std::int64_t> dist(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
        DivisorClass d;
        for (auto& c : d.coeffs) c = dist(rng);
        if (d.is_zero()) continue;
        CHECK(theorem_gap_check(bundle_invariants(d)) == (self_int(d) < -4));
    }
}

TEST_CASE("bundle invariants reject bad input") {
    CHECK_THROWS_AS(bundle_invariants(DivisorClass{}), std::invalid_argument);
    DivisorClass neg;
    neg.coeffs[0] = -1;
    CHECK_THROWS_AS(bundle_invariants(neg), std::invalid_argument);
}
