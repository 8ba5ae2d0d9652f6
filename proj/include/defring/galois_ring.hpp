#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace defring {

inline constexpr int kMaxDegree = 8;

// GR(p^m, d) = W(F_{p^d}) / p^m.  The defining polynomial is given mod p;
// the ring itself is presented modulo its Teichmüller lift, so the class of
// x is the Teichmüller representative of a root of defining_poly.
struct RingSpec {
    int p = 2;
    int m = 1;
    int d = 1;
    std::vector<std::int64_t> defining_poly{0, 1};  // monic, low degree first, size d + 1

    bool operator==(const RingSpec&) const = default;
};

// Coefficients of 1, x, ..., x^{d-1}, each in [0, p^m).  Unused slots are zero.
struct GrElem {
    std::array<std::int64_t, kMaxDegree> c{};

    bool operator==(const GrElem&) const = default;
    auto operator<=>(const GrElem&) const = default;
};

// Residue field elements F_{p^d} are addressed by index sum_i c_i p^i of
// their coefficient vector in the basis 1, xbar, ..., xbar^{d-1}.
using ResidueIndex = std::int64_t;

std::int64_t ipow(std::int64_t base, int exp);
bool is_prime(std::int64_t n);
std::int64_t mod_inverse(std::int64_t a, std::int64_t modulus);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::vector<std::int64_t> prime_factors(std::int64_t n);

// Irreducibility over F_p of a monic polynomial (low degree first).
bool is_irreducible_mod_p(std::span<const std::int64_t> poly, int p);

class GaloisRing {
public:
    using Elem = GrElem;

    explicit GaloisRing(RingSpec spec);

    static GaloisRing prime(int p, int m);
    // Uses the first monic irreducible polynomial of degree d in index order.
    static GaloisRing of_degree(int p, int m, int d);

    const RingSpec& spec() const noexcept { return spec_; }
    int p() const noexcept { return spec_.p; }
    int m() const noexcept { return spec_.m; }
    int d() const noexcept { return spec_.d; }
    std::int64_t modulus() const noexcept { return pm_; }
    std::int64_t residue_size() const noexcept { return q_; }
    std::int64_t size() const;
    const std::vector<std::int64_t>& teichmuller_modulus() const noexcept { return modpoly_; }

    GrElem zero() const noexcept { return {}; }
    GrElem one() const noexcept;
    GrElem from_int(std::int64_t v) const noexcept;
    GrElem root() const noexcept;

    GrElem add(const GrElem& a, const GrElem& b) const noexcept;
    GrElem sub(const GrElem& a, const GrElem& b) const noexcept;
    GrElem neg(const GrElem& a) const noexcept;
    GrElem mul(const GrElem& a, const GrElem& b) const noexcept;
    GrElem scale(const GrElem& a, std::int64_t s) const noexcept;
    GrElem pow(GrElem a, std::uint64_t e) const noexcept;
    bool is_zero(const GrElem& a) const noexcept { return a == GrElem{}; }
    bool is_unit(const GrElem& a) const noexcept;
    // Throws std::domain_error for non-units.
    GrElem inv(const GrElem& a) const;
    bool eq(const GrElem& a, const GrElem& b) const noexcept { return a == b; }

    // Largest v <= m with a in p^v R.
    int valuation(const GrElem& a) const noexcept;
    GrElem p_power(int v) const noexcept;
    // a / p^v for valuation(a) >= v, representative with coefficients in [0, p^{m-v}).
    GrElem divide_by_p_power(const GrElem& a, int v) const noexcept;
    // Canonical representative of a mod p^v (coefficients in [0, p^v)).
    GrElem remainder_mod_p_power(const GrElem& a, int v) const noexcept;

    ResidueIndex residue_index(const GrElem& a) const noexcept;
    // Coefficient lift of a residue with entries in [0, p).
    GrElem residue_lift(ResidueIndex r) const noexcept;
    GrElem teichmuller(ResidueIndex r) const;
    std::vector<ResidueIndex> digits(const GrElem& a) const;
    GrElem from_digits(std::span<const ResidueIndex> digits) const;
    GrElem frobenius(const GrElem& a) const noexcept;

    // Coefficient-wise reduction into a ring with the same p, d, polynomial and m' <= m.
    GrElem reduce_to(const GrElem& a, const GaloisRing& target) const;
    // Coefficient lift into a ring with the same p, d, polynomial and m' >= m.
    GrElem lift_to(const GrElem& a, const GaloisRing& target) const;
    bool same_tower(const GaloisRing& other) const noexcept;

    std::string to_string(const GrElem& a) const;

private:
    GrElem teichmuller_uncached(ResidueIndex r) const;

    RingSpec spec_;
    std::int64_t pm_ = 1;
    std::int64_t q_ = 1;
    std::vector<std::int64_t> modpoly_;
    std::vector<GrElem> frob_basis_;
    std::vector<GrElem> teich_table_;
};

// Fixed embedding GR(p^m, d0) -> GR(p^m, d) for d0 | d, sending the
// generator of the small ring to the Teichmüller lift of the first root (in
// index order) of its defining polynomial inside F_{p^d}.
class SubringEmbedding {
public:
    SubringEmbedding(std::shared_ptr<const GaloisRing> big, std::shared_ptr<const GaloisRing> small);

    const GaloisRing& big() const noexcept { return *big_; }
    const GaloisRing& small() const noexcept { return *small_; }
    const GrElem& generator_image() const noexcept { return gen_image_; }

    GrElem embed(const GrElem& a) const;
    bool in_subring(const GrElem& a) const;
    // Throws NotInSubring unless frobenius^{d0}(a) == a.
    GrElem coerce(const GrElem& a) const;

private:
    std::shared_ptr<const GaloisRing> big_;
    std::shared_ptr<const GaloisRing> small_;
    GrElem gen_image_;
    std::vector<ResidueIndex> big_to_small_;  // -1 outside the subfield
};

}  // namespace defring
