#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defring/cyclotomic.hpp"
#include "defring/errors.hpp"

#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

using namespace defring;

namespace {

// Oracle: numerical value of a sum of roots of unity at zeta = exp(2 pi i / ell).
std::complex<double> evaluate(const CyclotomicSum& u)
{
    std::complex<double> z = 0;
    for (int j = 0; j < u.ell; ++j)
        z += static_cast<double>(u.coeffs[j]) * std::polar(1.0, 2 * std::numbers::pi * j / u.ell);
    return z;
}

CyclotomicSum random_sum(int ell, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> dist(-3, 3);
    CyclotomicSum u{ell, std::vector<std::int64_t>(ell)};
    for (auto& c : u.coeffs) c = dist(rng);
    return u;
}

}  // namespace

TEST_CASE("cyc_sum encodes exponent multisets")
{
    const std::vector<std::int64_t> e0{0}, e12{1, 2}, e26{2, 6};
    CHECK(cyc_sum(3, e0).coeffs == std::vector<std::int64_t>{1, 0, 0});
    CHECK(cyc_sum(3, e12).coeffs == std::vector<std::int64_t>{0, 1, 1});
    CHECK(cyc_sum(8, e26).coeffs == std::vector<std::int64_t>{0, 0, 1, 0, 0, 0, 1, 0});
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<std::int64_t>{1, 1, 1});
    CHECK(cyclotomic_polynomial(8) == std::vector<std::int64_t>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
    // Degree is Euler's phi.
    for (int ell = 1; ell <= 40; ++ell) {
        int phi = 0;
        for (int k = 1; k <= ell; ++k) phi += std::gcd(k, ell) == 1;
        CHECK(static_cast<int>(cyclotomic_polynomial(ell).size()) - 1 == phi);
    }
}

TEST_CASE("equality in Z[zeta]")
{
    const std::vector<std::int64_t> e12{1, 2}, e26{2, 6};
    CHECK(cyc_equal_in_zeta(cyc_sum(3, e12), cyc_constant(3, -1)));
    CHECK(cyc_equal_in_zeta(cyc_sum(8, e26), cyc_constant(8, 0)));
    CHECK_FALSE(cyc_equal_in_zeta(cyc_sum(8, e26), cyc_constant(8, 2)));
    CHECK_THROWS_AS((void)cyc_equal_in_zeta(cyc_constant(3, 0), cyc_constant(4, 0)), ModulusMismatch);
}

TEST_CASE("equality agrees with numerical evaluation and is an equivalence relation")
{
    std::mt19937_64 rng(3);
    int agreements = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int ell = 2 + static_cast<int>(rng() % 15);
        const auto u = random_sum(ell, rng);
        // Build v equal to u by adding a random multiple of the full-coset sum for a prime r | ell.
        auto v = u;
        for (int r = 2; r <= ell; ++r) {
            if (ell % r != 0) continue;
            bool prime = true;
            for (int k = 2; k * k <= r; ++k) prime = prime && r % k != 0;
            if (!prime) continue;
            const int j = static_cast<int>(rng() % ell);
            for (int t = 0; t < r; ++t) v.coeffs[(j + t * (ell / r)) % ell] += 1;
            break;
        }
        const auto w = random_sum(ell, rng);
        CHECK(cyc_equal_in_zeta(u, u));
        CHECK(cyc_equal_in_zeta(u, v));
        CHECK(cyc_equal_in_zeta(v, u));
        const bool uw = cyc_equal_in_zeta(u, w);
        CHECK(uw == cyc_equal_in_zeta(v, w));
        const bool numeric = std::abs(evaluate(u) - evaluate(w)) < 1e-9;
        CHECK(uw == numeric);
        agreements += uw == numeric;
    }
    CHECK(agreements == 300);
}

TEST_CASE("full sums vanish")
{
    for (int ell = 2; ell <= 30; ++ell) {
        std::vector<std::int64_t> all(ell);
        for (int j = 0; j < ell; ++j) all[j] = j;
        CHECK(cyc_equal_in_zeta(cyc_sum(ell, all), cyc_constant(ell, 0)));
        for (int r = 2; r <= ell; ++r) {
            if (ell % r != 0) continue;
            bool prime = true;
            for (int k = 2; k * k <= r; ++k) prime = prime && r % k != 0;
            if (!prime) continue;
            for (int j = 0; j < ell; ++j) {
                std::vector<std::int64_t> coset;
                for (int t = 0; t < r; ++t) coset.push_back(j + t * (ell / r));
                CHECK(cyc_equal_in_zeta(cyc_sum(ell, coset), cyc_constant(ell, 0)));
            }
        }
    }
}

TEST_CASE("cyc_frobenius")
{
    const std::vector<std::int64_t> e1{1}, e26{2, 6};
    CHECK(cyc_frobenius(cyc_sum(3, e1), 5) == cyc_sum(3, std::vector<std::int64_t>{2}));
    CHECK(cyc_frobenius(cyc_sum(8, e26), 3) == cyc_sum(8, e26));
    CHECK(cyc_frobenius(cyc_constant(7, 4), 3) == cyc_constant(7, 4));
    CHECK_THROWS_AS((void)cyc_frobenius(cyc_constant(6, 1), 3), BadModulus);
}
