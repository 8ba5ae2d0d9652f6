#pragma once

#include "defring/groups.hpp"
#include "defring/parallel.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace defring {

// D x D matrix over F_p, row-major.
using FpMat = std::vector<std::int32_t>;

// Incremental row echelon form over F_p for systems in `vars` unknowns.  Rows
// added with a right-hand side are affine equations sum a_i y_i = rhs.
class FpEliminator {
public:
    FpEliminator(int p, int vars);

    int p() const noexcept { return p_; }
    int vars() const noexcept { return vars_; }
    int rank() const noexcept { return static_cast<int>(rows_.size()); }
    bool consistent() const noexcept { return consistent_; }

    // Returns true when the row was independent of the current rows.
    bool add(std::span<const std::int64_t> coeffs, std::int64_t rhs = 0);
    // Free variables set to zero.  Only meaningful while consistent().
    std::vector<std::int32_t> particular() const;
    // Basis of the solution space of the homogeneous system.
    std::vector<std::vector<std::int32_t>> kernel() const;

private:
    int p_;
    int vars_;
    bool consistent_ = true;
    std::vector<std::vector<std::int32_t>> rows_;  // vars + 1 entries, pivot normalized to 1
    std::vector<int> pivots_;
};

// F_p-vector space of dimension D on which a finite group acts.  The k-dimension
// of a module over k = F_{p^d} is D / d.
struct ActionModule {
    const FiniteGroup* group = nullptr;
    int p = 2;
    int d = 1;
    int D = 0;
    std::vector<std::int32_t> mats;  // |G| blocks of D x D

    const std::int32_t* action(int g) const { return mats.data() + static_cast<std::size_t>(g) * D * D; }
    FpMat action_matrix(int g) const;
    // out = g . v
    void act(int g, const std::int32_t* v, std::int32_t* out) const;
};

// Builds the action from generator matrices along a Cayley tree and checks it is a
// homomorphism (exhaustively for |G| <= 1500, else on generator pairs).  Throws HomomorphismFailure.
ActionModule module_from_generators(const FiniteGroup& G, int p, int d, int D, const std::vector<int>& gens,
                                    const std::vector<FpMat>& gen_actions, Exec exec = Exec::Parallel);
// Action given for every element; checked the same way.
ActionModule module_from_function(const FiniteGroup& G, int p, int d, int D,
                                  const std::function<FpMat(int)>& action, Exec exec = Exec::Parallel);

struct H1Result {
    int dim_z1 = 0;
    int dim_b1 = 0;
    int dim_fixed = 0;
    int dim_fp = 0;
    int dim_k = 0;
};

// 1-cocycles by affine propagation along a Cayley tree.  Throws NotGenerating.
H1Result h1_dim(const ActionModule& M, const std::vector<int>& gens);

// dim_k Hom_G(K/pK, M_0).  M must be a module for Gamma on which K acts trivially
// (throws ModuleNotInflated otherwise).
int h1_via_inflation(const ExtensionGroup& Gamma, const ActionModule& M);

struct TwoCocycle {
    const ActionModule* module = nullptr;
    std::vector<std::int32_t> values;  // |G|^2 blocks of D; pair (g, h) at index g |G| + h

    const std::int32_t* at(int g, int h) const
    {
        const std::size_t n = static_cast<std::size_t>(module->group->order());
        return values.data() + (static_cast<std::size_t>(g) * n + static_cast<std::size_t>(h)) * module->D;
    }
    bool is_zero() const;
};

// Fills o(g, h) for all pairs in parallel; f writes D entries in [0, p).
TwoCocycle cocycle_from(const ActionModule& M, const std::function<void(int, int, std::int32_t*)>& f,
                        Exec exec = Exec::Parallel);

// (dc)(g, h) = c(g) + g c(h) - c(gh), c given as |G| blocks of D.
TwoCocycle coboundary(const ActionModule& M, const std::vector<std::int32_t>& c, Exec exec = Exec::Parallel);

struct CocycleCheck {
    bool ok = true;
    bool exhaustive = false;
    std::int64_t triples = 0;
    std::array<int, 3> failure{-1, -1, -1};
};

// g o(h,k) - o(gh,k) + o(g,hk) - o(g,h) = 0.  All triples for |G| <= 300; otherwise
// all (g, h, s) with s in gens plus `random_triples` random ones.
CocycleCheck check_cocycle_identity(const TwoCocycle& o, const std::vector<int>& gens,
                                    std::int64_t random_triples = 100000, std::uint64_t seed = 1,
                                    Exec exec = Exec::Parallel);

struct CoboundarySolution {
    bool solvable = false;
    std::vector<std::int32_t> cochain;  // |G| blocks of D when solvable
    int equations_rank = 0;
    int unknowns = 0;
    bool validated = false;  // dc == o on every pair
};

// Solves dc = o with c determined by its generator values.  Equations come from pairs
// (g, s), s a generator; a found witness is checked against all pairs.
CoboundarySolution is_coboundary(const TwoCocycle& o, const std::vector<int>& gens, Exec exec = Exec::Parallel);

}  // namespace defring
