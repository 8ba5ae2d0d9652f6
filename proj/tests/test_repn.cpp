#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defring/errors.hpp"
#include "defring/hypothesis.hpp"
#include "defring/repn.hpp"

#include <memory>

using namespace defring;

namespace {

std::shared_ptr<const GaloisRing> zp(int p, int m)
{
    return std::make_shared<const GaloisRing>(GaloisRing::prime(p, m));
}

int mat_order(const GaloisRing& R, const GrMatrix& X)
{
    const auto I = identity_matrix(R, X.rows);
    GrMatrix cur = X;
    int k = 1;
    while (cur != I && k < 10000) {
        cur = mat_mul(R, cur, X);
        ++k;
    }
    return k;
}

std::int64_t at0(const GrMatrix& X, int r, int c)
{
    return X.at(r, c).c[0];
}

}  // namespace

TEST_CASE("induced representation over the big ring")
{
    const MetacyclicGroup G(3, 2, 2);
    const auto root = big_root_of_unity(2, 3, 3);
    CHECK(root.ring->d() == 2);
    const GaloisRing& B = *root.ring;
    CHECK(B.pow(root.zeta, 3) == B.one());
    CHECK(B.pow(root.zeta, 1) != B.one());
    const auto rho = induced_rep_big(G, 1, root);
    const auto& T = rho.images[G.tau()];
    const auto& S = rho.images[G.sigma()];
    CHECK(T.at(0, 0) == root.zeta);
    CHECK(T.at(1, 1) == B.pow(root.zeta, 2));
    CHECK(T.at(0, 1) == B.zero());
    CHECK(S.at(1, 0) == B.one());
    CHECK(S.at(0, 1) == B.one());
    CHECK(S.at(0, 0) == B.zero());
    CHECK(first_rep_failure(G, rho) == 36);

    const auto triv = induced_rep_big(G, 0, root);
    CHECK(triv.images[G.tau()] == identity_matrix(B, 2));

    const MetacyclicGroup G16(8, 2, 3);
    const auto root3 = big_root_of_unity(3, 1, 8);
    const auto rho2 = induced_rep_big(G16, 2, root3);
    CHECK(mat_order(*root3.ring, rho2.images[G16.tau()]) == 4);
    CHECK(first_rep_failure(G16, rho2, Exec::Serial) == 256);
    CHECK_THROWS_AS(big_root_of_unity(3, 1, 6), NoRootOfUnity);
    CHECK_THROWS_AS(big_root_of_unity(2, 1, 19), NoRootOfUnity);
}

TEST_CASE("characters of induced representations")
{
    const MetacyclicGroup G(3, 2, 2);
    const auto chi = char_of_induced(G, 1);
    CHECK(chi[G.tau()].coeffs == std::vector<std::int64_t>{0, 1, 1});
    CHECK(cyc_equal_in_zeta(chi[G.tau()], cyc_constant(3, -1)));
    CHECK(cyc_equal_in_zeta(chi[0], cyc_constant(3, 2)));
    CHECK(cyc_equal_in_zeta(chi[G.sigma()], cyc_constant(3, 0)));
    const MetacyclicGroup G16(8, 2, 3);
    const auto chi2 = char_of_induced(G16, 2);
    CHECK(chi2[G16.tau()].coeffs == std::vector<std::int64_t>{0, 0, 1, 0, 0, 0, 1, 0});
    CHECK(cyc_equal_in_zeta(chi2[G16.tau()], cyc_constant(8, 0)));
    // Class functions, checked exhaustively.
    for (const auto& H : {G, G16, MetacyclicGroup(7, 3, 2), MetacyclicGroup(13, 4, 5)})
        for (std::int64_t a = 0; a < H.ell(); ++a) {
            const auto values = char_of_induced(H, a);
            CHECK(cyc_equal_in_zeta(values[0], cyc_constant(H.ell(), H.q())));
            for (int g = 0; g < H.order(); ++g)
                for (int x = 0; x < H.order(); ++x)
                    CHECK(values[H.mul(H.mul(g, x), H.inverse(g))] == values[x]);
        }
}

TEST_CASE("descended representations")
{
    const MetacyclicGroup G(3, 2, 2);
    const auto d2 = descend_rep(G, 1, zp(2, 3));
    CHECK(d2.verified());
    CHECK(d2.f.size() == 3);
    CHECK(d2.f[0].c[0] == 1);
    CHECK(d2.f[1].c[0] == 1);
    CHECK(d2.f[2].c[0] == 1);
    const auto& T = d2.rep.images[G.tau()];
    CHECK(at0(T, 0, 0) == 0);
    CHECK(at0(T, 1, 0) == 1);
    CHECK(at0(T, 0, 1) == 7);
    CHECK(at0(T, 1, 1) == 7);
    const auto d3 = descend_rep(G, 1, zp(5, 2));
    CHECK(d3.verified());
    CHECK(d3.f[0].c[0] == 1);
    CHECK(d3.f[1].c[0] == 1);

    // ell = 8 over Z/27: f = x^2 - s x - 1 with s = zeta + zeta^3, s^2 = -2.
    const MetacyclicGroup G16(8, 2, 3);
    const auto d8 = descend_rep(G16, 1, zp(3, 3));
    CHECK(d8.verified());
    CHECK(d8.f[0].c[0] == 26);
    const std::int64_t s = (27 - d8.f[1].c[0]) % 27;
    CHECK(s * s % 27 == 25);
    CHECK_THROWS_AS(descend_rep(G16, 4, zp(3, 2)), NotDescendable);

    // Character field of degree 2: ell = 5, H = {1, 4}, p = 2 needs d = 2.
    const MetacyclicGroup G5(5, 2, 4);
    CHECK_THROWS_AS(descend_rep(G5, 1, zp(2, 2)), NotDescendable);
    const auto k4 = std::make_shared<const GaloisRing>(GaloisRing::of_degree(2, 2, 2));
    CHECK(descend_rep(G5, 1, k4).verified());

    // Sweep over search results: every descent verifies.
    for (int p : {2, 3, 5, 7})
        for (const auto& t : search(p, 1, 13, 4)) {
            const MetacyclicGroup H(t.ell, t.q, t.u);
            const int d = check_hypothesis(t).k_degree;
            std::shared_ptr<const GaloisRing> W;
            try {
                (void)big_root_of_unity(p, 1, t.ell, d);
            } catch (const NoRootOfUnity&) {
                continue;
            }
            W = std::make_shared<const GaloisRing>(GaloisRing::of_degree(p, 2, d));
            CHECK(descend_rep(H, 1, W).verified());
            CHECK(descend_rep(H, t.a, W).verified());
        }
}

TEST_CASE("multiplicity by character")
{
    const MetacyclicGroup G16(8, 2, 3);
    const auto m = multiplicity_by_character(G16, 2);
    CHECK(m.S.size() == 2);
    CHECK(m.mult == 1);
    CHECK(m.agrees);
    const MetacyclicGroup G(3, 2, 2);
    CHECK(multiplicity_by_character(G, 1).mult == 1);
    const auto m0 = multiplicity_by_character(G, 0);
    CHECK(m0.S.size() == 4);
    CHECK(m0.mult == 2);
    CHECK(m0.agrees);
    for (const auto& H : {G, G16, MetacyclicGroup(7, 3, 2), MetacyclicGroup(13, 4, 5), MetacyclicGroup(9, 6, 2)})
        for (std::int64_t a = 0; a < H.ell(); ++a) CHECK(multiplicity_by_character(H, a).agrees);
}

TEST_CASE("hom modules, psi and commutator witnesses")
{
    const MetacyclicGroup G(3, 2, 2);
    const std::vector<int> gens = G.generators();
    for (int n : {1, 2, 3}) {
        const auto A = zp(2, n);
        const auto V = descend_rep(G, 1, A);
        const auto src = restrict_scalars(V.rep, gens);
        // End of V-hat: free of rank one over A.
        const auto end = hom_module(src, src);
        CHECK(end.log_size == n);
        CHECK(end.free_rank_one);
        CHECK(end.a_stable);
        const auto M = conjugation_module(V.rep, gens);
        CHECK(M.dim == 4);
        const auto hom = hom_module(src, M);
        CHECK(hom.log_size == n);
        CHECK(hom.invariant_factors == std::vector<int>{n});
        CHECK(hom.free_rank_one);
        CHECK(hom.a_stable);
        const GaloisRing& Z = *src.base;
        CHECK(psi_injective(Z, hom.generator));
        CHECK_FALSE(psi_injective(Z, GrMatrix(4, 2)));
        if (n >= 2) CHECK_FALSE(psi_injective(Z, mat_scale(Z, hom.generator, Z.from_int(2))));
        const auto w = commutator_witness(*A, hom.generator, 2);
        CHECK(w.found);
        CHECK(w.column >= 0);
    }
    // Scalar-valued psi has no witness.
    const auto A = zp(2, 1);
    GrMatrix scalar(4, 2);
    scalar.at(0, 0) = A->one();
    scalar.at(3, 0) = A->one();
    scalar.at(0, 1) = A->one();
    scalar.at(3, 1) = A->one();
    CHECK_FALSE(commutator_witness(*A, scalar, 2).found);

    // p = 3, ell = 8, a = 2: Hom(V', M) has 3 elements.
    const MetacyclicGroup G16(8, 2, 3);
    const auto A3 = zp(3, 1);
    const auto V = descend_rep(G16, 1, A3);
    const auto Va = descend_rep(G16, 2, A3);
    const auto hom = hom_module(restrict_scalars(Va.rep, G16.generators()), conjugation_module(V.rep, G16.generators()));
    CHECK(hom.log_size == 1);
    CHECK(hom.free_rank_one);
    CHECK(psi_injective(*A3, hom.generator));
    CHECK(commutator_witness(*A3, hom.generator, 2).found);
    // No common constituent: the trivial character against V-hat.
    const auto T0 = descend_rep(G16, 1, A3);
    LinearModule triv;
    triv.base = A3;
    triv.dim = 1;
    GrMatrix one(1, 1);
    one.at(0, 0) = A3->one();
    triv.action = {one, one};
    triv.a_mult = one;
    CHECK(hom_module(triv, restrict_scalars(T0.rep, G16.generators())).log_size == 0);
}

TEST_CASE("explicit witness")
{
    const MetacyclicGroup G16(8, 2, 3);
    const auto w = explicit_witness(G16, 2, 3);
    CHECK(w.h2 == 1);
    CHECK(w.h3 == 3);
    CHECK(w.equivariant);
    CHECK(w.noncommuting);
    CHECK(w.s2 != w.s3);
    for (const auto& e : w.fe_after_fs) CHECK(e == GrElem{});
    const MetacyclicGroup G(3, 2, 2);
    const auto w5 = explicit_witness(G, 1, 5);
    CHECK(w5.equivariant);
    CHECK(w5.noncommuting);
    CHECK_THROWS_AS(explicit_witness(G, 0, 5), HypothesisFailure);
}

TEST_CASE("multiplicity equals Hom dimension for all a")
{
    // Over the big residue field F_{p^D}, mult(Ind theta^a, M_0) = dim Hom_G(Ind theta^a, M_0).
    struct Family {
        int ell, q;
        std::int64_t u;
        int p;
    };
    for (const auto& fam : {Family{3, 2, 2, 2}, Family{3, 2, 2, 5}, Family{8, 2, 3, 3}}) {
        const MetacyclicGroup G(fam.ell, fam.q, fam.u);
        const auto root = big_root_of_unity(fam.p, 1, fam.ell);
        const int D = root.ring->d();
        const auto V = induced_rep_big(G, 1, root);
        // Scalar multiplication joins the action so that only F_{p^D}-linear maps count.
        auto M0 = conjugation_module(V, G.generators());
        M0.action.push_back(M0.a_mult);
        for (std::int64_t a = 0; a < fam.ell; ++a) {
            auto src = restrict_scalars(induced_rep_big(G, a, root), G.generators());
            src.action.push_back(src.a_mult);
            const auto hom = hom_module(src, M0);
            CHECK(hom.log_size % D == 0);
            CHECK(hom.log_size / D == multiplicity_by_character(G, a).mult);
        }
    }
}
