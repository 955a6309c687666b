#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kummer/involution.hpp"
#include "kummer/lattice.hpp"

using namespace kummer;

namespace {

DivisorClass D(const std::string& expr) { return parse_divisor(expr); }

std::int64_t gram_at(const std::string& a, const std::string& b) {
    return context().gram[static_cast<std::size_t>(generator_index(a))]
                         [static_cast<std::size_t>(generator_index(b))];
}

DivisorClass random_vector(std::mt19937& rng, std::int64_t lo = -5, std::int64_t hi = 5) {
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    DivisorClass d;
    for (auto& c : d.coeffs) c = dist(rng);
    return d;
}

}  // namespace

TEST_CASE("basis ordering is the fixed 32-generator list") {
    const auto& basis = context().basis;
    REQUIRE(basis.size() == 32);
    CHECK(basis[0].label == "E0");
    CHECK(basis[1].label == "E12");
    CHECK(basis[15].label == "E56");
    CHECK(basis[16].label == "T1");
    CHECK(basis[21].label == "T6");
    CHECK(basis[22].label == "T126");
    CHECK(basis[31].label == "T456");
    for (int i = 0; i < 16; ++i) CHECK(basis[static_cast<std::size_t>(i)].kind == CurveKind::node);
    for (int i = 16; i < 32; ++i)
        CHECK(basis[static_cast<std::size_t>(i)].kind == CurveKind::trope);
}

TEST_CASE("gram matrix golden entries") {
    CHECK(gram_at("E0", "T1") == 1);
    CHECK(gram_at("E0", "E0") == -2);
    CHECK(gram_at("E0", "T456") == 0);
    CHECK(gram_at("E12", "T456") == 1);  // {1,2} disjoint from {4,5,6}
    CHECK(gram_at("E12", "T3") == 0);
    CHECK(gram_at("E12", "T1") == 1);
    CHECK(gram_at("E12", "T126") == 1);  // {1,2} inside {1,2,6}
    CHECK(gram_at("E12", "T136") == 0);
    CHECK(gram_at("E13", "E24") == 0);
    CHECK(gram_at("T1", "T2") == 0);
}

TEST_CASE("gram symmetry and the (16_6)-configuration") {
    const auto& gram = context().gram;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) CHECK(gram[i][j] == gram[j][i]);
    for (int i = 0; i < 32; ++i) {
        int incidence = 0;
        for (int j = 0; j < 32; ++j)
            if (context().basis[static_cast<std::size_t>(i)].kind !=
                context().basis[static_cast<std::size_t>(j)].kind)
                incidence += static_cast<int>(gram[i][j]);
        CHECK(incidence == 6);
    }
}

TEST_CASE("pairing examples") {
    CHECK(pair(D("E0"), D("T3")) == 1);
    CHECK(pair(D("E0 + E12 + E13"), DivisorClass{}) == 0);
    CHECK(pair(D("E0 + E12 + E13"), D("T456 + T3 + T2")) == 6);

    SECTION("bilinearity and symmetry on random vectors") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            const auto a = random_vector(rng);
            const auto b = random_vector(rng);
            const auto c = random_vector(rng);
            CHECK(pair(a, b) == pair(b, a));
            CHECK(pair(a + b, c) == pair(a, c) + pair(b, c));
            CHECK(pair(3 * a, b) == 3 * pair(a, b));
        }
    }
}

TEST_CASE("self-intersection is even and matches goldens") {
    CHECK(self_int(D("E0")) == -2);
    CHECK(self_int(D("E0 + E12 + E13")) == -6);
    CHECK(self_int(D("E0 + 2E13")) == -10);  // -2(1 + 4), not -2n

    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(self_int(random_vector(rng)) % 2 == 0);
}

TEST_CASE("linear equivalence") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_vector(rng);
        CHECK(equiv(d, d));
    }
    CHECK_FALSE(equiv(D("E0"), D("E12")));

    const auto d = D("E12 + T3");
    REQUIRE(equiv(d, theta(d)));
    SECTION("equivalent classes pair equally against anything") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_vector(rng);
            CHECK(pair(d, x) == pair(theta(d), x));
        }
    }
}

TEST_CASE("gram rank is 17") {
    CHECK(gram_rank() == 17);

    SECTION("node block alone has full rank") {
        std::vector<std::vector<std::int64_t>> block(16, std::vector<std::int64_t>(16));
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) block[i][j] = context().gram[i][j];
        CHECK(integer_rank(block) == 16);
    }

    SECTION("rank is invariant under conjugation by the involution") {
        const auto& perm = context().theta_perm;
        std::vector<std::vector<std::int64_t>> conj(32, std::vector<std::int64_t>(32));
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) conj[i][j] = context().gram[perm[i]][perm[j]];
        CHECK(integer_rank(conj) == 17);
    }
}

TEST_CASE("divisor parsing") {
    const auto d1 = D("E0 + E13 + E13");
    CHECK(d1.coeffs[generator_index("E0")] == 1);
    CHECK(d1.coeffs[generator_index("E13")] == 2);

    const auto d2 = D("3E23 + E14 + 2E56");
    CHECK(d2.coeffs[generator_index("E23")] == 3);
    CHECK(d2.coeffs[generator_index("E14")] == 1);
    CHECK(d2.coeffs[generator_index("E56")] == 2);

    SECTION("grammar variants") {
        CHECK(D("E_12 + T_3") == D("E12 + T3"));
        CHECK(D("2*E12") == D("2E12"));
        CHECK(D("  2 E12 ") == D("2E12"));
        CHECK(D("T_126") == D("T126"));
        CHECK(D("0").is_zero());
    }

    SECTION("errors") {
        CHECK_THROWS_AS(parse_divisor(""), std::invalid_argument);
        CHECK_THROWS_AS(parse_divisor("E0 + "), std::invalid_argument);
        CHECK_THROWS_AS(parse_divisor("E99"), std::invalid_argument);
        CHECK_THROWS_AS(parse_divisor("T7"), std::invalid_argument);
        CHECK_THROWS_AS(parse_divisor("3"), std::invalid_argument);
        CHECK_THROWS_AS(parse_divisor("3x*E0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_divisor("-2E0", /*allow_negative=*/false),
                        std::invalid_argument);
        CHECK_NOTHROW(parse_divisor("-2E0"));
    }
}

TEST_CASE("format round-trips through parse") {
    CHECK(format_divisor(D("E0 + 2E13")) == "E0 + 2E13");
    CHECK(format_divisor(DivisorClass{}) == "0");
    CHECK(format_divisor(D("T3 + E12")) == "E12 + T3");  // basis order

    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_vector(rng, -3, 3);
        CHECK(parse_divisor(format_divisor(d)) == d);
    }
}

TEST_CASE("overflow is detected, not wrapped") {
    DivisorClass big;
    big.coeffs[0] = std::int64_t{1} << 62;
    CHECK_THROWS_AS(self_int(big), std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
}
