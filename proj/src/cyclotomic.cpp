#include "defring/cyclotomic.hpp"

#include "defring/errors.hpp"
#include "defring/galois_ring.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace defring {

namespace {

using Poly = std::vector<std::int64_t>;

void trim(Poly& f)
{
    while (f.size() > 1 && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Division by a monic polynomial; returns quotient, leaves remainder in a.
Poly divide_monic(Poly& a, const Poly& b)
{
    const int db = static_cast<int>(b.size()) - 1;
    const int da = static_cast<int>(a.size()) - 1;
    if (da < db) return {0};
    Poly q(da - db + 1, 0);
    for (int k = da; k >= db; --k) {
        const std::int64_t co = a[k];
        if (co == 0) continue;
        q[k - db] = co;
        for (int i = 0; i <= db; ++i) a[k - db + i] -= co * b[i];
    }
    a.resize(db > 0 ? db : 1);
    trim(a);
    return q;
}

void check_same(const CyclotomicSum& u, const CyclotomicSum& v)
{
    if (u.ell != v.ell) throw ModulusMismatch("cyclotomic sums with different ell");
}

}  // namespace

CyclotomicSum cyc_sum(int ell, std::span<const std::int64_t> exponents)
{
    CyclotomicSum r{ell, std::vector<std::int64_t>(ell, 0)};
    for (std::int64_t e : exponents) r.coeffs[((e % ell) + ell) % ell] += 1;
    return r;
}

CyclotomicSum cyc_constant(int ell, std::int64_t value)
{
    CyclotomicSum r{ell, std::vector<std::int64_t>(ell, 0)};
    r.coeffs[0] = value;
    return r;
}

CyclotomicSum cyc_add(const CyclotomicSum& u, const CyclotomicSum& v)
{
    check_same(u, v);
    CyclotomicSum r = u;
    for (int j = 0; j < u.ell; ++j) r.coeffs[j] += v.coeffs[j];
    return r;
}

CyclotomicSum cyc_sub(const CyclotomicSum& u, const CyclotomicSum& v)
{
    check_same(u, v);
    CyclotomicSum r = u;
    for (int j = 0; j < u.ell; ++j) r.coeffs[j] -= v.coeffs[j];
    return r;
}

CyclotomicSum cyc_mul(const CyclotomicSum& u, const CyclotomicSum& v)
{
    check_same(u, v);
    CyclotomicSum r{u.ell, std::vector<std::int64_t>(u.ell, 0)};
    for (int i = 0; i < u.ell; ++i) {
        if (u.coeffs[i] == 0) continue;
        for (int j = 0; j < u.ell; ++j) r.coeffs[(i + j) % u.ell] += u.coeffs[i] * v.coeffs[j];
    }
    return r;
}

std::vector<std::int64_t> cyclotomic_polynomial(int ell)
{
    if (ell < 1) throw BadModulus("ell must be positive");
    static std::mutex mu;
    static std::map<int, Poly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(ell); it != cache.end()) return it->second;
    }
    Poly num(ell + 1, 0);
    num[0] = -1;
    num[ell] = 1;
    Poly den{1};
    for (int e = 1; e < ell; ++e)
        if (ell % e == 0) den = poly_mul(den, cyclotomic_polynomial(e));
    Poly q = divide_monic(num, den);
    if (!(num.size() == 1 && num[0] == 0)) throw std::logic_error("cyclotomic division not exact");
    std::lock_guard lock(mu);
    cache.emplace(ell, q);
    return q;
}

std::vector<std::int64_t> cyc_reduce(const CyclotomicSum& u)
{
    const Poly phi = cyclotomic_polynomial(u.ell);
    Poly a = u.coeffs;
    trim(a);
    divide_monic(a, phi);
    a.resize(phi.size() - 1, 0);
    return a;
}

bool cyc_equal_in_zeta(const CyclotomicSum& u, const CyclotomicSum& v)
{
    check_same(u, v);
    for (std::int64_t c : cyc_reduce(cyc_sub(u, v)))
        if (c != 0) return false;
    return true;
}

CyclotomicSum cyc_frobenius(const CyclotomicSum& u, std::int64_t p)
{
    if (gcd64(p, u.ell) != 1) throw BadModulus("p must be prime to ell");
    CyclotomicSum r{u.ell, std::vector<std::int64_t>(u.ell, 0)};
    const std::int64_t pm = p % u.ell;
    for (int j = 0; j < u.ell; ++j) r.coeffs[(j * pm) % u.ell] += u.coeffs[j];
    return r;
}

bool cyc_as_integer(const CyclotomicSum& u, std::int64_t& value)
{
    const Poly r = cyc_reduce(u);
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return false;
    value = r.empty() ? 0 : r[0];
    return true;
}

std::string cyc_to_string(const CyclotomicSum& u)
{
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < u.ell; ++j) {
        if (u.coeffs[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (j == 0 || u.coeffs[j] != 1) os << u.coeffs[j];
        if (j > 0) os << (u.coeffs[j] != 1 ? "*" : "") << "x^" << j;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace defring
