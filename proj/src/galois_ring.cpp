#include "defring/galois_ring.hpp"

#include "defring/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace defring {

namespace {

std::int64_t md(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

// Arithmetic in Z/N[x]/(F) for an arbitrary monic F of degree d.
GrElem poly_mulmod(const GrElem& a, const GrElem& b, const std::vector<std::int64_t>& F, int d,
                   std::int64_t N)
{
    std::array<std::int64_t, 2 * kMaxDegree> t{};
    for (int i = 0; i < d; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < d; ++j) t[i + j] = (t[i + j] + a.c[i] * b.c[j] % N) % N;
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        const std::int64_t co = t[k];
        if (co == 0) continue;
        for (int i = 0; i < d; ++i) t[k - d + i] = md(t[k - d + i] - co * F[i] % N, N);
        t[k] = 0;
    }
    GrElem r;
    std::copy_n(t.begin(), d, r.c.begin());
    return r;
}

GrElem poly_powp(GrElem a, int p, const std::vector<std::int64_t>& F, int d, std::int64_t N)
{
    GrElem result;
    result.c[0] = 1 % N;
    for (int e = p; e > 0; e >>= 1) {
        if (e & 1) result = poly_mulmod(result, a, F, d, N);
        a = poly_mulmod(a, a, F, d, N);
    }
    return result;
}

GrElem x_class(const std::vector<std::int64_t>& F, int d, std::int64_t N)
{
    GrElem x;
    if (d >= 2) {
        x.c[1] = 1;
    } else {
        x.c[0] = md(-F[0], N);
    }
    return x;
}

// Dense polynomials over F_p, low degree first.
using FpPoly = std::vector<std::int64_t>;

void trim(FpPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, int p)
{
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    const std::int64_t lead_inv = mod_inverse(b.back(), p);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const std::int64_t co = a.back() * lead_inv % p;
        const int shift = static_cast<int>(a.size()) - 1 - db;
        for (int i = 0; i <= db; ++i) a[shift + i] = md(a[shift + i] - co * b[i], p);
        trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, int p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    return fp_mod(t, f, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, int p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FpPoly fp_pow_x_frobenius(const FpPoly& f, int p, int k)
{
    FpPoly x = fp_mod({0, 1}, f, p);
    for (int i = 0; i < k; ++i) {
        FpPoly r{1};
        FpPoly b = x;
        for (int e = p; e > 0; e >>= 1) {
            if (e & 1) r = fp_mulmod(r, b, f, p);
            b = fp_mulmod(b, b, f, p);
        }
        x = r;
    }
    return x;
}

}  // namespace

std::int64_t ipow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
    return std::gcd(a, b);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t modulus)
{
    std::int64_t t = 0, new_t = 1, r = modulus, new_r = md(a, modulus);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::domain_error("element is not invertible");
    return md(t, modulus);
}

std::vector<std::int64_t> prime_factors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t k = 2; k * k <= n; ++k) {
        if (n % k != 0) continue;
        out.push_back(k);
        while (n % k == 0) n /= k;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_irreducible_mod_p(std::span<const std::int64_t> poly, int p)
{
    FpPoly f(poly.begin(), poly.end());
    for (auto& c : f) c = md(c, p);
    trim(f);
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1 || f.back() != 1) return false;
    if (n == 1) return true;
    FpPoly xq = fp_pow_x_frobenius(f, p, n);
    FpPoly x = fp_mod({0, 1}, f, p);
    if (xq != x) return false;
    for (std::int64_t r : prime_factors(n)) {
        FpPoly h = fp_pow_x_frobenius(f, p, static_cast<int>(n / r));
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = md(h[1] - 1, p);
        trim(h);
        if (h.empty()) return false;
        if (fp_gcd(h, f, p).size() != 1) return false;
    }
    return true;
}

GaloisRing::GaloisRing(RingSpec spec) : spec_(std::move(spec))
{
    const int p = spec_.p;
    const int m = spec_.m;
    const int d = spec_.d;
    if (!is_prime(p)) throw InvalidRing("p must be prime");
    if (m < 1 || d < 1 || d > kMaxDegree) throw InvalidRing("need m >= 1 and 1 <= d <= 8");
    if (static_cast<int>(spec_.defining_poly.size()) != d + 1)
        throw InvalidRing("defining polynomial must have degree d");
    for (auto& c : spec_.defining_poly) c = md(c, p);
    if (spec_.defining_poly.back() != 1) throw InvalidRing("defining polynomial must be monic");
    if (!is_irreducible_mod_p(spec_.defining_poly, p))
        throw InvalidRing("defining polynomial is reducible mod p");

    constexpr std::int64_t kLimit = std::int64_t{1} << 31;
    pm_ = 1;
    for (int i = 0; i < m; ++i) {
        pm_ *= p;
        if (pm_ > kLimit) throw InvalidRing("p^m exceeds 2^31");
    }
    q_ = 1;
    for (int i = 0; i < d; ++i) {
        if (q_ > (std::numeric_limits<std::int64_t>::max() / 4) / p)
            throw InvalidRing("p^d too large");
        q_ *= p;
    }

    // Teichmüller modulus: the minimal polynomial over Z/p^m of the
    // Teichmüller lift of a root, i.e. prod_i (T - y^{p^i}).
    std::vector<std::int64_t> naive(spec_.defining_poly.begin(), spec_.defining_poly.end());
    if (m == 1) {
        modpoly_ = naive;
    } else {
        GrElem y = x_class(naive, d, pm_);
        for (int i = 0; i < d * (m - 1); ++i) y = poly_powp(y, p, naive, d, pm_);
        std::vector<GrElem> poly(1);
        poly[0].c[0] = 1;
        GrElem conj = y;
        for (int i = 0; i < d; ++i) {
            std::vector<GrElem> next(poly.size() + 1);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                for (int k = 0; k < d; ++k) next[j + 1].c[k] = md(next[j + 1].c[k] + poly[j].c[k], pm_);
                const GrElem prod = poly_mulmod(conj, poly[j], naive, d, pm_);
                for (int k = 0; k < d; ++k) next[j].c[k] = md(next[j].c[k] - prod.c[k], pm_);
            }
            poly = std::move(next);
            conj = poly_powp(conj, p, naive, d, pm_);
        }
        modpoly_.assign(d + 1, 0);
        for (int j = 0; j <= d; ++j) {
            for (int k = 1; k < d; ++k)
                if (poly[j].c[k] != 0) throw InvalidRing("Teichmüller modulus is not rational");
            modpoly_[j] = poly[j].c[0];
        }
    }

    frob_basis_.resize(d);
    const GrElem x = root();
    for (int i = 0; i < d; ++i) frob_basis_[i] = pow(x, static_cast<std::uint64_t>(p) * i);

    if (q_ <= 4096) {
        teich_table_.resize(static_cast<std::size_t>(q_));
        for (ResidueIndex r = 0; r < q_; ++r) teich_table_[r] = teichmuller_uncached(r);
    }
}

GaloisRing GaloisRing::prime(int p, int m)
{
    return GaloisRing(RingSpec{p, m, 1, {0, 1}});
}

GaloisRing GaloisRing::of_degree(int p, int m, int d)
{
    if (!is_prime(p) || d < 1 || d > kMaxDegree) throw InvalidRing("bad field parameters");
    const std::int64_t count = ipow(p, d);
    for (std::int64_t idx = 0; idx < count; ++idx) {
        std::vector<std::int64_t> poly(d + 1, 0);
        std::int64_t t = idx;
        for (int i = 0; i < d; ++i) {
            poly[i] = t % p;
            t /= p;
        }
        poly[d] = 1;
        if (is_irreducible_mod_p(poly, p)) return GaloisRing(RingSpec{p, m, d, poly});
    }
    throw InvalidRing("no irreducible polynomial found");
}

std::int64_t GaloisRing::size() const
{
    std::int64_t s = 1;
    for (int i = 0; i < spec_.d; ++i) s *= pm_;
    return s;
}

GrElem GaloisRing::one() const noexcept
{
    GrElem r;
    r.c[0] = 1 % pm_;
    return r;
}

GrElem GaloisRing::from_int(std::int64_t v) const noexcept
{
    GrElem r;
    r.c[0] = md(v, pm_);
    return r;
}

GrElem GaloisRing::root() const noexcept
{
    return x_class(modpoly_, spec_.d, pm_);
}

GrElem GaloisRing::add(const GrElem& a, const GrElem& b) const noexcept
{
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) {
        std::int64_t s = a.c[i] + b.c[i];
        r.c[i] = s >= pm_ ? s - pm_ : s;
    }
    return r;
}

GrElem GaloisRing::sub(const GrElem& a, const GrElem& b) const noexcept
{
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) {
        std::int64_t s = a.c[i] - b.c[i];
        r.c[i] = s < 0 ? s + pm_ : s;
    }
    return r;
}

GrElem GaloisRing::neg(const GrElem& a) const noexcept
{
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) r.c[i] = a.c[i] == 0 ? 0 : pm_ - a.c[i];
    return r;
}

GrElem GaloisRing::mul(const GrElem& a, const GrElem& b) const noexcept
{
    if (spec_.d == 1) {
        GrElem r;
        r.c[0] = a.c[0] * b.c[0] % pm_;
        return r;
    }
    return poly_mulmod(a, b, modpoly_, spec_.d, pm_);
}

GrElem GaloisRing::scale(const GrElem& a, std::int64_t s) const noexcept
{
    s = md(s, pm_);
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) r.c[i] = a.c[i] * s % pm_;
    return r;
}

GrElem GaloisRing::pow(GrElem a, std::uint64_t e) const noexcept
{
    GrElem r = one();
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
    }
    return r;
}

bool GaloisRing::is_unit(const GrElem& a) const noexcept
{
    for (int i = 0; i < spec_.d; ++i)
        if (a.c[i] % spec_.p != 0) return true;
    return false;
}

GrElem GaloisRing::inv(const GrElem& a) const
{
    if (!is_unit(a)) throw std::domain_error("inverse of a non-unit in Galois ring");
    if (spec_.d == 1) return from_int(mod_inverse(a.c[0], pm_));
    // Field inverse mod p, then Newton iteration b <- b(2 - ab).
    GrElem b = pow(a, static_cast<std::uint64_t>(q_ - 2));
    const GrElem two = from_int(2);
    for (int iter = 0; iter < 64; ++iter) {
        const GrElem ab = mul(a, b);
        if (ab == one()) return b;
        b = mul(b, sub(two, ab));
    }
    throw std::logic_error("Newton inverse did not converge");
}

int GaloisRing::valuation(const GrElem& a) const noexcept
{
    int best = spec_.m;
    for (int i = 0; i < spec_.d; ++i) {
        std::int64_t c = a.c[i];
        if (c == 0) continue;
        int v = 0;
        while (c % spec_.p == 0) {
            c /= spec_.p;
            ++v;
        }
        best = std::min(best, v);
    }
    return best;
}

GrElem GaloisRing::p_power(int v) const noexcept
{
    if (v >= spec_.m) return zero();
    return from_int(ipow(spec_.p, v));
}

GrElem GaloisRing::divide_by_p_power(const GrElem& a, int v) const noexcept
{
    const std::int64_t pv = ipow(spec_.p, v);
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) r.c[i] = a.c[i] / pv;
    return r;
}

GrElem GaloisRing::remainder_mod_p_power(const GrElem& a, int v) const noexcept
{
    if (v >= spec_.m) return a;
    const std::int64_t pv = ipow(spec_.p, v);
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) r.c[i] = a.c[i] % pv;
    return r;
}

ResidueIndex GaloisRing::residue_index(const GrElem& a) const noexcept
{
    ResidueIndex idx = 0;
    for (int i = spec_.d - 1; i >= 0; --i) idx = idx * spec_.p + a.c[i] % spec_.p;
    return idx;
}

GrElem GaloisRing::residue_lift(ResidueIndex r) const noexcept
{
    GrElem e;
    for (int i = 0; i < spec_.d; ++i) {
        e.c[i] = r % spec_.p;
        r /= spec_.p;
    }
    return e;
}

GrElem GaloisRing::teichmuller_uncached(ResidueIndex r) const
{
    GrElem y = residue_lift(r);
    for (int i = 0; i < spec_.d * (spec_.m - 1); ++i) y = pow(y, static_cast<std::uint64_t>(spec_.p));
    return y;
}

GrElem GaloisRing::teichmuller(ResidueIndex r) const
{
    if (r < 0 || r >= q_) throw std::out_of_range("residue index out of range");
    if (!teich_table_.empty()) return teich_table_[static_cast<std::size_t>(r)];
    return teichmuller_uncached(r);
}

std::vector<ResidueIndex> GaloisRing::digits(const GrElem& a) const
{
    std::vector<ResidueIndex> out;
    out.reserve(spec_.m);
    GrElem cur = a;
    for (int i = 0; i < spec_.m; ++i) {
        const ResidueIndex x = residue_index(cur);
        out.push_back(x);
        cur = divide_by_p_power(sub(cur, teichmuller(x)), 1);
    }
    return out;
}

GrElem GaloisRing::from_digits(std::span<const ResidueIndex> digits) const
{
    GrElem acc = zero();
    for (int i = static_cast<int>(std::min<std::size_t>(digits.size(), spec_.m)) - 1; i >= 0; --i) {
        acc = add(scale(acc, spec_.p), teichmuller(digits[i]));
    }
    return acc;
}

GrElem GaloisRing::frobenius(const GrElem& a) const noexcept
{
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) {
        if (a.c[i] == 0) continue;
        r = add(r, scale(frob_basis_[i], a.c[i]));
    }
    return r;
}

bool GaloisRing::same_tower(const GaloisRing& other) const noexcept
{
    return spec_.p == other.spec_.p && spec_.d == other.spec_.d &&
           spec_.defining_poly == other.spec_.defining_poly;
}

GrElem GaloisRing::reduce_to(const GrElem& a, const GaloisRing& target) const
{
    if (!same_tower(target) || target.m() > spec_.m) throw ModulusMismatch("reduce_to: incompatible rings");
    GrElem r;
    for (int i = 0; i < spec_.d; ++i) r.c[i] = a.c[i] % target.pm_;
    return r;
}

GrElem GaloisRing::lift_to(const GrElem& a, const GaloisRing& target) const
{
    if (!same_tower(target) || target.m() < spec_.m) throw ModulusMismatch("lift_to: incompatible rings");
    return a;
}

std::string GaloisRing::to_string(const GrElem& a) const
{
    if (spec_.d == 1) return std::to_string(a.c[0]);
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < spec_.d; ++i) os << (i ? "," : "") << a.c[i];
    os << ']';
    return os.str();
}

SubringEmbedding::SubringEmbedding(std::shared_ptr<const GaloisRing> big,
                                   std::shared_ptr<const GaloisRing> small)
    : big_(std::move(big)), small_(std::move(small))
{
    if (big_->p() != small_->p() || big_->m() != small_->m() || big_->d() % small_->d() != 0)
        throw ModulusMismatch("subring embedding needs equal p, m and d0 | d");
    const auto& f = small_->spec().defining_poly;
    ResidueIndex root = -1;
    for (ResidueIndex x = 0; x < big_->residue_size() && root < 0; ++x) {
        // Horner evaluation in the residue field.
        const GrElem xl = big_->residue_lift(x);
        GrElem acc = big_->zero();
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
            acc = big_->add(big_->mul(acc, xl), big_->from_int(f[i]));
        if (big_->residue_index(acc) == 0) root = x;
    }
    if (root < 0) throw NotInSubring("defining polynomial of the subring has no root");
    gen_image_ = big_->teichmuller(root);
    // Sanity: the generator image is a root of the small Teichmüller modulus.
    const auto& F = small_->teichmuller_modulus();
    GrElem acc = big_->zero();
    for (int i = static_cast<int>(F.size()) - 1; i >= 0; --i)
        acc = big_->add(big_->mul(acc, gen_image_), big_->from_int(F[i]));
    if (!big_->is_zero(acc)) throw std::logic_error("subring generator image is not a root");

    big_to_small_.assign(static_cast<std::size_t>(big_->residue_size()), -1);
    for (ResidueIndex s = 0; s < small_->residue_size(); ++s) {
        const GrElem img = embed(small_->teichmuller(s));
        big_to_small_[static_cast<std::size_t>(big_->residue_index(img))] = s;
    }
}

GrElem SubringEmbedding::embed(const GrElem& a) const
{
    GrElem acc = big_->zero();
    for (int i = small_->d() - 1; i >= 0; --i)
        acc = big_->add(big_->mul(acc, gen_image_), big_->from_int(a.c[i]));
    return acc;
}

bool SubringEmbedding::in_subring(const GrElem& a) const
{
    GrElem f = a;
    for (int i = 0; i < small_->d(); ++i) f = big_->frobenius(f);
    return f == a;
}

GrElem SubringEmbedding::coerce(const GrElem& a) const
{
    if (!in_subring(a)) throw NotInSubring("element is not fixed by frobenius^d0");
    std::vector<ResidueIndex> small_digits;
    for (ResidueIndex x : big_->digits(a)) {
        const ResidueIndex s = big_to_small_[static_cast<std::size_t>(x)];
        if (s < 0) throw NotInSubring("Teichmüller digit outside the subfield");
        small_digits.push_back(s);
    }
    return small_->from_digits(small_digits);
}

}  // namespace defring
