#pragma once

#include "defring/parallel.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace defring {

// Elements are indexed 0..order()-1 with 0 the identity.
class FiniteGroup {
public:
    virtual ~FiniteGroup() = default;
    virtual int order() const = 0;
    virtual int mul(int x, int y) const = 0;
    virtual int inverse(int x) const = 0;
    virtual std::vector<int> generators() const = 0;
    virtual std::string describe(int x) const = 0;
    int identity() const noexcept { return 0; }
};

std::int64_t multiplicative_order(std::int64_t u, std::int64_t modulus);

// G = Z/ell x|_nu Z/q with sigma tau sigma^-1 = tau^u.  Element (c, s) = tau^c sigma^s
// has index c + ell * s.
class MetacyclicGroup final : public FiniteGroup {
public:
    // Throws BadAction unless ell, q > 1, gcd(u, ell) = 1 and u has order q mod ell.
    MetacyclicGroup(int ell, int q, std::int64_t u);

    int ell() const noexcept { return ell_; }
    int q() const noexcept { return q_; }
    std::int64_t u() const noexcept { return u_; }

    int order() const override { return ell_ * q_; }
    int mul(int x, int y) const override;
    int inverse(int x) const override;
    std::vector<int> generators() const override { return {tau(), sigma()}; }
    std::string describe(int x) const override;

    int element(std::int64_t c, std::int64_t s) const;
    int c_of(int x) const noexcept { return x % ell_; }
    int s_of(int x) const noexcept { return x / ell_; }
    int tau() const { return element(1, 0); }
    int sigma() const { return element(0, 1); }
    // nu(sigma^s) = u^s mod ell.
    std::int64_t nu(std::int64_t s) const;
    // H = <u> listed as u^0, u^1, ..., u^{q-1}.
    std::vector<std::int64_t> H() const;

private:
    int ell_;
    int q_;
    std::int64_t u_;
    std::vector<std::int64_t> upow_;
};

// Square matrix over Z/p^n, row-major.
using IntMat = std::vector<std::int64_t>;

// Gamma = K x|_delta G with K = (Z/p^n)^rank.  Element (v, g) has index
// code(v) + |K| * g where code(v) = sum_i v_i (p^n)^i.
class ExtensionGroup final : public FiniteGroup {
public:
    // Throws RelationViolation naming the failed relation.
    ExtensionGroup(std::shared_ptr<const MetacyclicGroup> base, int p, int n, int rank, IntMat tau_action,
                   IntMat sigma_action);

    const MetacyclicGroup& base() const noexcept { return *base_; }
    std::shared_ptr<const MetacyclicGroup> base_ptr() const noexcept { return base_; }
    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    int rank() const noexcept { return rank_; }
    std::int64_t modulus() const noexcept { return pn_; }
    int kernel_order() const noexcept { return korder_; }

    int order() const override { return korder_ * base_->order(); }
    int mul(int x, int y) const override;
    int inverse(int x) const override;
    // K basis vectors, then (0, tau), (0, sigma).
    std::vector<int> generators() const override;
    std::string describe(int x) const override;

    int element(std::int64_t vcode, int g) const { return static_cast<int>(vcode) + korder_ * g; }
    int vcode_of(int x) const noexcept { return x % korder_; }
    int g_of(int x) const noexcept { return x / korder_; }
    std::vector<std::int64_t> decode(std::int64_t vcode) const;
    std::int64_t encode(const std::vector<std::int64_t>& v) const;
    // delta(g) as a rank x rank matrix over Z/p^n.
    const IntMat& action(int g) const { return actions_[g]; }
    std::vector<std::int64_t> act(int g, const std::vector<std::int64_t>& v) const;

private:
    std::shared_ptr<const MetacyclicGroup> base_;
    int p_, n_, rank_;
    std::int64_t pn_;
    int korder_;
    std::vector<IntMat> actions_;
};

// Spanning tree of the Cayley graph from the identity: parent[x] * gens[via[x]] == x.
struct CayleyTree {
    std::vector<int> gens;
    std::vector<int> order;  // BFS visiting order, starting with the identity
    std::vector<int> parent;
    std::vector<int> via;
};

// Throws NotGenerating if gens do not generate the group.
CayleyTree cayley_tree(const FiniteGroup& G, const std::vector<int>& gens);

// Extends generator images along a Cayley tree.
template <class Img, class Mul>
std::vector<Img> images_from_generators(const FiniteGroup& G, const CayleyTree& tree,
                                        const std::vector<Img>& gen_images, const Img& id, Mul&& mul)
{
    std::vector<Img> img(static_cast<std::size_t>(G.order()), id);
    for (std::size_t k = 1; k < tree.order.size(); ++k) {
        const int x = tree.order[k];
        img[x] = mul(img[tree.parent[x]], gen_images[tree.via[x]]);
    }
    return img;
}

// First pair (x, y), encoded x * order + y, with mul(img[x], img[y]) != img[xy]; order^2 if none.
template <class Img, class Mul>
std::int64_t first_hom_failure(const FiniteGroup& G, const std::vector<Img>& img, Mul&& mul,
                               Exec exec = Exec::Parallel)
{
    const std::int64_t n = G.order();
    return first_failure(
        n * n,
        [&](std::int64_t idx) {
            const int x = static_cast<int>(idx / n), y = static_cast<int>(idx % n);
            return !(mul(img[x], img[y]) == img[G.mul(x, y)]);
        },
        exec);
}

struct GroupReport {
    int order = 0;
    bool associative = true;
    std::int64_t triples_checked = 0;
    bool associativity_exhaustive = false;
    bool inverses_ok = true;
    bool identity_unique = true;
    std::map<int, int> element_orders;  // element order -> count
    int center_size = 0;
    bool abelian = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

GroupReport group_checks(const FiniteGroup& G, std::uint64_t seed = 1);

struct ProjectionReport {
    bool homomorphism = true;
    bool surjective = true;
    int kernel_size = 0;
    bool exhaustive = false;
};

// pi: Gamma -> G, (v, g) -> g.
ProjectionReport check_projection(const ExtensionGroup& Gamma);

}  // namespace defring
