#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace defring {

// Element of Z[x]/(x^ell - 1); coeffs[j] is the coefficient of x^j.
struct CyclotomicSum {
    int ell = 1;
    std::vector<std::int64_t> coeffs{0};

    bool operator==(const CyclotomicSum&) const = default;
};

CyclotomicSum cyc_sum(int ell, std::span<const std::int64_t> exponents);
CyclotomicSum cyc_constant(int ell, std::int64_t value);
CyclotomicSum cyc_add(const CyclotomicSum& u, const CyclotomicSum& v);
CyclotomicSum cyc_sub(const CyclotomicSum& u, const CyclotomicSum& v);
CyclotomicSum cyc_mul(const CyclotomicSum& u, const CyclotomicSum& v);

// Integer coefficients of the ell-th cyclotomic polynomial, low degree first.
std::vector<std::int64_t> cyclotomic_polynomial(int ell);

// u mod Phi_ell, as a vector of length phi(ell).
std::vector<std::int64_t> cyc_reduce(const CyclotomicSum& u);

// Equality in Z[zeta_ell].  Throws ModulusMismatch on differing ell.
bool cyc_equal_in_zeta(const CyclotomicSum& u, const CyclotomicSum& v);

// x^j -> x^{p j}.  Throws BadModulus if p divides ell.
CyclotomicSum cyc_frobenius(const CyclotomicSum& u, std::int64_t p);

// If u is congruent to an integer constant mod Phi_ell, writes it and returns true.
bool cyc_as_integer(const CyclotomicSum& u, std::int64_t& value);

std::string cyc_to_string(const CyclotomicSum& u);

}  // namespace defring
