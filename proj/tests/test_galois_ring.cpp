#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defring/errors.hpp"
#include "defring/galois_ring.hpp"

#include <memory>
#include <random>

using namespace defring;

namespace {

GrElem random_elem(const GaloisRing& R, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> dist(0, R.modulus() - 1);
    GrElem e;
    for (int i = 0; i < R.d(); ++i) e.c[i] = dist(rng);
    return e;
}

}  // namespace

TEST_CASE("teichmuller lift over Z/9 matches brute-force search")
{
    const auto R = GaloisRing::prime(3, 2);
    for (std::int64_t x = 0; x < 3; ++x) {
        // Oracle: the unique e in Z/9 with e^3 = e and e = x mod 3.
        std::int64_t found = -1;
        int count = 0;
        for (std::int64_t e = 0; e < 9; ++e)
            if (e * e * e % 9 == e && e % 3 == x) {
                found = e;
                ++count;
            }
        REQUIRE(count == 1);
        CHECK(R.teichmuller(x).c[0] == found);
    }
    CHECK(R.teichmuller(2).c[0] == 8);
    CHECK(R.teichmuller(0) == R.zero());
    CHECK(GaloisRing::prime(2, 3).teichmuller(1) == GaloisRing::prime(2, 3).one());
}

TEST_CASE("teichmuller lifts are p^d-stable and reduce correctly")
{
    for (auto [p, m, d] : {std::tuple{2, 3, 2}, {3, 2, 2}, {5, 3, 1}, {2, 4, 3}, {3, 3, 2}}) {
        const auto R = GaloisRing::of_degree(p, m, d);
        for (ResidueIndex x = 0; x < R.residue_size(); ++x) {
            const GrElem t = R.teichmuller(x);
            CHECK(R.residue_index(t) == x);
            CHECK(R.pow(t, static_cast<std::uint64_t>(R.residue_size())) == t);
        }
    }
}

TEST_CASE("digit decomposition round-trips exhaustively on small rings")
{
    for (auto [p, m, d] : {std::tuple{2, 3, 2}, {3, 2, 2}, {5, 2, 2}, {3, 3, 2}, {7, 2, 2}, {2, 4, 3}, {2, 6, 2}}) {
        const auto R = GaloisRing::of_degree(p, m, d);
        REQUIRE(R.size() <= 10000);
        std::int64_t mismatches = 0;
        for (std::int64_t idx = 0; idx < R.size(); ++idx) {
            GrElem e;
            std::int64_t t = idx;
            for (int i = 0; i < d; ++i) {
                e.c[i] = t % R.modulus();
                t /= R.modulus();
            }
            const auto dg = R.digits(e);
            if (R.from_digits(dg) != e) ++mismatches;
            CHECK(R.is_unit(e) == (dg[0] != 0));
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("frobenius is a ring automorphism of order d")
{
    std::mt19937_64 rng(7);
    for (auto [p, m, d] : {std::tuple{2, 3, 2}, {3, 2, 3}, {5, 2, 2}, {2, 5, 4}, {3, 1, 1}}) {
        const auto R = GaloisRing::of_degree(p, m, d);
        for (int trial = 0; trial < 200; ++trial) {
            const GrElem a = random_elem(R, rng);
            const GrElem b = random_elem(R, rng);
            CHECK(R.frobenius(R.add(a, b)) == R.add(R.frobenius(a), R.frobenius(b)));
            CHECK(R.frobenius(R.mul(a, b)) == R.mul(R.frobenius(a), R.frobenius(b)));
            GrElem f = a;
            for (int i = 0; i < d; ++i) f = R.frobenius(f);
            CHECK(f == a);
            if (d == 1) CHECK(R.frobenius(a) == a);
        }
        // Digit action: frobenius(omega(x)) = omega(x^p).
        const GaloisRing field(RingSpec{p, 1, d, R.spec().defining_poly});
        for (ResidueIndex x = 0; x < R.residue_size(); ++x) {
            const ResidueIndex xp = field.residue_index(field.pow(field.residue_lift(x), p));
            CHECK(R.frobenius(R.teichmuller(x)) == R.teichmuller(xp));
        }
    }
}

TEST_CASE("ring axioms and inverses on random elements")
{
    std::mt19937_64 rng(11);
    for (auto [p, m, d] : {std::tuple{2, 4, 3}, {3, 3, 2}, {7, 2, 1}, {5, 2, 4}}) {
        const auto R = GaloisRing::of_degree(p, m, d);
        for (int trial = 0; trial < 200; ++trial) {
            const GrElem a = random_elem(R, rng), b = random_elem(R, rng), c = random_elem(R, rng);
            CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
            CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
            CHECK(R.mul(a, b) == R.mul(b, a));
            if (R.is_unit(a)) CHECK(R.mul(a, R.inv(a)) == R.one());
            else CHECK_THROWS_AS((void)R.inv(a), std::domain_error);
            const int v = R.valuation(a);
            if (v < m) {
                CHECK(R.mul(R.p_power(v), R.divide_by_p_power(a, v)) == a);
                CHECK(R.is_unit(R.divide_by_p_power(a, v)));
            }
        }
    }
}

TEST_CASE("invalid ring specifications are rejected")
{
    CHECK_THROWS_AS(GaloisRing(RingSpec{4, 1, 1, {0, 1}}), InvalidRing);
    CHECK_THROWS_AS(GaloisRing(RingSpec{2, 1, 2, {0, 0, 1}}), InvalidRing);
    CHECK_THROWS_AS(GaloisRing(RingSpec{2, 0, 1, {0, 1}}), InvalidRing);
    CHECK_NOTHROW(GaloisRing(RingSpec{2, 1, 2, {1, 1, 1}}));
}

TEST_CASE("subring coercion of zeta8 + zeta8^3 in F_9")
{
    auto big = std::make_shared<const GaloisRing>(GaloisRing::of_degree(3, 1, 2));
    auto small = std::make_shared<const GaloisRing>(GaloisRing::prime(3, 1));
    const SubringEmbedding emb(big, small);
    // Oracle: F_9 = F_3[i], i^2 = -1, elements (re, im); enumerate elements of order 8.
    auto mul9 = [](std::pair<int, int> x, std::pair<int, int> y) {
        return std::pair<int, int>{((x.first * y.first - x.second * y.second) % 3 + 3) % 3,
                                   (x.first * y.second + x.second * y.first) % 3};
    };
    REQUIRE(big->spec().defining_poly == std::vector<std::int64_t>{1, 0, 1});
    int roots = 0;
    for (int re = 0; re < 3; ++re)
        for (int im = 0; im < 3; ++im) {
            std::pair<int, int> z{re, im}, w{1, 0};
            int order = 0;
            do {
                w = mul9(w, z);
                ++order;
            } while (w != std::pair<int, int>{1, 0} && order < 10);
            if (order != 8) continue;
            ++roots;
            const auto z3 = mul9(mul9(z, z), z);
            const int sum_re = (z.first + z3.first) % 3;
            REQUIRE((z.second + z3.second) % 3 == 0);
            GrElem e;
            e.c[0] = sum_re;
            e.c[1] = 0;
            GrElem zeta;
            zeta.c[0] = re;
            zeta.c[1] = im;
            const GrElem sum = big->add(zeta, big->pow(zeta, 3));
            CHECK(sum == e);
            CHECK(emb.coerce(sum).c[0] == sum_re);
        }
    CHECK(roots == 4);
    GrElem i;
    i.c[1] = 1;
    CHECK_THROWS_AS((void)emb.coerce(i), NotInSubring);
    CHECK(emb.coerce(big->one()) == small->one());
}

TEST_CASE("subring embedding is a ring homomorphism with Frobenius-fixed image")
{
    std::mt19937_64 rng(5);
    auto big = std::make_shared<const GaloisRing>(GaloisRing::of_degree(2, 3, 4));
    auto small = std::make_shared<const GaloisRing>(GaloisRing::of_degree(2, 3, 2));
    const SubringEmbedding emb(big, small);
    for (int trial = 0; trial < 200; ++trial) {
        const GrElem a = random_elem(*small, rng), b = random_elem(*small, rng);
        CHECK(emb.embed(small->mul(a, b)) == big->mul(emb.embed(a), emb.embed(b)));
        CHECK(emb.embed(small->add(a, b)) == big->add(emb.embed(a), emb.embed(b)));
        CHECK(emb.in_subring(emb.embed(a)));
        CHECK(emb.coerce(emb.embed(a)) == a);
    }
}
