#pragma once

#include "defring/cyclotomic.hpp"
#include "defring/galois_ring.hpp"
#include "defring/groups.hpp"
#include "defring/matrix.hpp"

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace defring {

// GR(p^m, D) with a fixed primitive ell-th root of unity zeta = omega(g^{(p^D-1)/ell}),
// g the first generator of F_{p^D}^* in index order.
struct RootOfUnity {
    std::shared_ptr<const GaloisRing> ring;
    int ell = 1;
    ResidueIndex zeta_index = 1;
    GrElem zeta;
};

// D = lcm(ord_ell(p), min_degree).  Throws NoRootOfUnity if p | ell or D > kMaxDegree.
RootOfUnity big_root_of_unity(int p, int m, int ell, int min_degree = 1);

// Images of every group element, column-vector convention: rho(xy) = rho(x) rho(y).
struct MatrixRep {
    std::shared_ptr<const GaloisRing> ring;
    int dim = 0;
    std::vector<GrMatrix> images;
};

MatrixRep rep_from_generators(const FiniteGroup& G, std::shared_ptr<const GaloisRing> ring,
                              const std::vector<GrMatrix>& gen_images);
// Encoded first failing pair (x * |G| + y), or |G|^2 when rho is a homomorphism.
std::int64_t first_rep_failure(const FiniteGroup& G, const MatrixRep& rho, Exec exec = Exec::Parallel);

// tau w_j = omega(zeta)^{a u^{-j}} w_j, sigma w_j = w_{j+1}.
MatrixRep induced_rep_big(const MetacyclicGroup& G, std::int64_t a, const RootOfUnity& root);

// Values indexed by group element; zero off <tau>.
std::vector<CyclotomicSum> char_of_induced(const MetacyclicGroup& G, std::int64_t a);

struct Descent {
    MatrixRep rep;
    std::vector<GrElem> f;  // prod_h (x - omega(zeta^{ah})) over the target, low degree first
    bool homomorphism = false;
    bool relations = false;
    bool charpolys_match = false;
    bool verified() const { return homomorphism && relations && charpolys_match; }
};

// Model W[x]/(f): tau = multiplication by x, sigma = substitution x -> x^u.
// Throws NotDescendable if the exponents a h are not distinct or f is not defined over target.
Descent descend_rep(const MetacyclicGroup& G, std::int64_t a, std::shared_ptr<const GaloisRing> target);

struct Multiplicity {
    std::vector<std::array<std::int64_t, 3>> S;  // (h1, h2, h3) with a h1 + h2 - h3 = 0
    std::int64_t mult = 0;
    std::int64_t inner_product_times_order = 0;  // sum over c, reduced in Z[zeta]; equals q ell mult
    bool agrees = false;
};

// Throws NotIntegral if q does not divide #S.
Multiplicity multiplicity_by_character(const MetacyclicGroup& G, std::int64_t a);

// A module over Z/p^n given by the action of chosen group elements, plus the
// matrix of multiplication by the generator of A = GR(p^n, d).
struct LinearModule {
    std::shared_ptr<const GaloisRing> base;  // Z/p^n
    int dim = 0;
    int a_degree = 1;
    std::vector<GrMatrix> action;  // aligned with the generator list used to build it
    GrMatrix a_mult;
};

// Restriction of scalars from A to Z/p^n: coordinate j*d + i is the x^i coefficient of entry j.
GrMatrix flatten_matrix(const GaloisRing& A, const GrMatrix& X, const GaloisRing& Z);
std::vector<GrElem> flatten_vector(const GaloisRing& A, const std::vector<GrElem>& v, const GaloisRing& Z);
std::vector<GrElem> unflatten_vector(const GaloisRing& A, const std::vector<GrElem>& v, const GaloisRing& Z);

LinearModule restrict_scalars(const MatrixRep& rho, const std::vector<int>& elements);
// Mat_q(A) with g acting by X -> rho(g) X rho(g)^-1; coordinate (r q + c) d + i.
LinearModule conjugation_module(const MatrixRep& rho, const std::vector<int>& elements);
GrMatrix unflatten_square(const GaloisRing& A, const std::vector<GrElem>& v, int q, const GaloisRing& Z);

struct HomModule {
    HowellResult basis;  // rows: Phi flattened row-major (target index * source dim + source index)
    int source_dim = 0;
    int target_dim = 0;
    int log_size = 0;  // log_p of the number of equivariant maps
    std::vector<int> invariant_factors;  // exponents e with summands Z/p^e
    bool a_stable = false;
    bool free_rank_one = false;  // over A: log_size = n d and one generator spans
    GrMatrix generator;  // target_dim x source_dim; first Howell row
};

HomModule hom_module(const LinearModule& source, const LinearModule& target);

bool psi_injective(const GaloisRing& Z, const GrMatrix& psi);

struct CommutatorWitness {
    bool found = false;
    std::vector<std::int64_t> v1, v2;  // elements of K / pK
    int column = -1;                   // standard basis vector of V-hat moved by the commutator
    GrMatrix commutator;               // over k
    std::int64_t pairs_checked = 0;
};

// psi maps K = (Z/p^n)^{dq} into Mat_q(A) (flattened).  Searches basis pairs first, then K/pK.
CommutatorWitness commutator_witness(const GaloisRing& A, const GrMatrix& psi, int q,
                                     std::int64_t max_pairs = 1000000);

struct ExplicitWitness {
    std::int64_t h2 = 0, h3 = 0;
    int s = 0, s2 = 0, s3 = 0, s3_prime = 0;  // exponents j of sigma^j
    std::vector<GrElem> fs_after_fe;           // (f(w_s) o f(w_e))(x_{s2})
    std::vector<GrElem> fe_after_fs;           // (f(w_e) o f(w_s))(x_{s2})
    bool equivariant = false;
    bool noncommuting = false;
};

// Over the big residue field (m = 1).  Throws HypothesisFailure unless exactly one
// pair (h2, h3) in H^2 has h3 - h2 = a.
ExplicitWitness explicit_witness(const MetacyclicGroup& G, std::int64_t a, int p);

}  // namespace defring
