#pragma once

#include "defring/cohomology.hpp"
#include "defring/groups.hpp"
#include "defring/hypothesis.hpp"
#include "defring/matrix.hpp"
#include "defring/repn.hpp"
#include "defring/test_ring.hpp"

#include <memory>
#include <string>
#include <vector>

namespace defring {

using TMat = Matrix<TElem>;

// Everything built from a parameter tuple at W-precision m:
//   A = W(k)/p^n, W = W(k)/p^m, k = F_{p^d} with d the residue degree of the character of V-hat,
//   V' = descent of Ind theta^a over A, V-hat of Ind theta over A, rho_W of Ind theta over W,
//   Gamma = K x| G with K = V' viewed over Z/p^n, psi the generator of Hom_G(V', Mat_q(A)).
struct Instance {
    ParameterTuple tuple;
    int m = 0;
    int d = 0;
    HypothesisReport hypothesis;
    std::shared_ptr<const MetacyclicGroup> G;
    std::shared_ptr<const GaloisRing> A, W, k, Z;
    Descent v_prime, v_hat, rho_w;
    MatrixRep rho_bar;  // over k
    bool rho_w_reduces_to_v_hat = false;
    std::shared_ptr<const ExtensionGroup> gamma;
    HomModule hom;
    GrMatrix psi;  // (q^2 d) x (q d) over Z/p^n
};

// Throws NotDescendable or NoRootOfUnity when the tuple cannot be modelled.
Instance build_instance(const ParameterTuple& t, int m);

// psi(v) as a q x q matrix over A for v in K given by its code.
GrMatrix psi_of(const Instance& inst, std::int64_t vcode);

// 1 + t X for X over A.
TMat nu_embed(const TestRing& R, const GrMatrix& X, const GaloisRing& A);
TMat embed_w(const TestRing& R, const GrMatrix& X);

struct LiftRecord {
    TestRing ring;
    const FiniteGroup* group = nullptr;
    std::vector<TMat> images;
    std::int64_t first_failure = 0;  // encoded pair, |Gamma|^2 when a homomorphism
    bool homomorphism = false;
    bool reduces_to_rho_w = false;
    bool restriction_is_nu_psi = false;
    bool verified() const { return homomorphism && reduces_to_rho_w && restriction_is_nu_psi; }
};

// rho_R((v, g)) = nu(psi(v)) rho_W(g).  With zero_psi the t-part is dropped.
LiftRecord construct_rho_R(const Instance& inst, const TestRing& R, bool zero_psi = false,
                           Exec exec = Exec::Parallel);

// Ad(rho-bar) = Mat_q(k) over F_p, inflated to Gamma; coordinate (r q + c) d + i.
ActionModule adjoint_module(const Instance& inst, Exec exec = Exec::Parallel);

// |k| rings of case (a), one per c in k, then case (b).
std::vector<TestRing> enumerate_small_extensions(int p, int n, int m, int d);

// rho-hat(g) rho-hat(h) rho-hat(gh)^-1 = 1 + z X(g, h).  Throws KernelViolation.
TwoCocycle obstruction_cocycle(const ActionModule& M, const TestRing& C, const std::vector<TMat>& lift,
                               Exec exec = Exec::Parallel);

struct Unliftability {
    std::string ring;
    bool obstructed = false;
    bool cocycle_identity = false;
    bool cocycle_exhaustive = false;
    std::int64_t triples_checked = 0;
    bool cocycle_zero = false;
    int equations_rank = 0;
    int unknowns = 0;
    bool lift_verified = false;  // only when not obstructed
    std::vector<TMat> lift;       // materialized lift when not obstructed
};

// Canonical section of rho_R into C, its obstruction cocycle, and the coboundary test.
// Throws NotALift if C does not surject onto the ring of rho_R.
Unliftability test_unliftability(const LiftRecord& rho_R, const TestRing& C, const ActionModule& M,
                                 const std::vector<int>& gens, Exec exec = Exec::Parallel);

struct AlphaDecomposition {
    GrMatrix alpha;  // Teichmüller or zero entries, over C.t_ring()
    GrMatrix xi;     // (a - alpha) / p, over C.t_ring()
    GrMatrix beta;   // t^2 coefficients (case (b)), over k
    bool matches_psi = false;  // alpha = psi(g) mod p
};

// Splits the t-coefficients of a candidate lift at g in K.  Throws DecompositionFailure
// unless the W-part of the image is the identity.
AlphaDecomposition extract_alpha(const TestRing& C, const TMat& image, const GrMatrix& psi_g, const GaloisRing& A);

// First pair (x, y), x < y, generating G in index order; the group's own generators if none.
std::vector<int> small_generating_set(const FiniteGroup& G);

struct BruteForceCount {
    std::int64_t classes = 0;
    std::int64_t lifts = 0;
    std::int64_t tuples = 0;
    std::int64_t kernel_group = 0;
    std::vector<int> generators;
};

// Strict equivalence classes of lifts of rho-bar (given on every element, over k) to A.
// Throws TooLarge when more than max_tuples generator tuples would be enumerated.
BruteForceCount brute_force_def_count(const FiniteGroup& G, const std::vector<GrMatrix>& rho_bar, const GaloisRing& k,
                                      const TestRing& A, std::int64_t max_tuples = 1 << 22,
                                      Exec exec = Exec::Parallel);

// #{x in m_A : p^n x = 0, x^2 = 0} = #Hom(W[[t]]/(p^n t, t^2), A).
std::int64_t hom_count_R_to_A(int n, const TestRing& A);

}  // namespace defring
