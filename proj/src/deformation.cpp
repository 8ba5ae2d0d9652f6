#include "defring/deformation.hpp"

#include "defring/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace defring {

namespace {

TMat section_matrix(const TestRing& C, const TMat& X, const TestRing& R)
{
    TMat Y(X.rows, X.cols);
    for (std::size_t i = 0; i < X.a.size(); ++i) Y.a[i] = C.from_r(X.a[i], R);
    return Y;
}

// kappa in k as d coordinates over F_p (x^i coefficients).
void residue_coords(ResidueIndex kappa, int p, int d, std::int32_t* out)
{
    for (int i = 0; i < d; ++i) {
        out[i] = static_cast<std::int32_t>(kappa % p);
        kappa /= p;
    }
}

ResidueIndex coords_residue(const std::int32_t* in, int p, int d)
{
    ResidueIndex r = 0;
    for (int i = d; i-- > 0;) r = r * p + in[i];
    return r;
}

std::vector<int> closure_size_check(const FiniteGroup& G, const std::vector<int>& gens)
{
    std::vector<int> seen(static_cast<std::size_t>(G.order()), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (int s : gens) {
            const int y = G.mul(queue[i], s);
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    return queue;
}

}  // namespace

Instance build_instance(const ParameterTuple& t, int m)
{
    if (m < t.n) throw PrecisionTooLow("W-precision m must be at least n");
    Instance inst;
    inst.tuple = t;
    inst.m = m;
    inst.hypothesis = check_hypothesis(t);
    inst.d = inst.hypothesis.k_degree;
    inst.G = std::make_shared<const MetacyclicGroup>(t.ell, t.q, t.u);
    const MetacyclicGroup& G = *inst.G;
    inst.A = std::make_shared<const GaloisRing>(GaloisRing::of_degree(t.p, t.n, inst.d));
    inst.W = std::make_shared<const GaloisRing>(GaloisRing::of_degree(t.p, m, inst.d));
    inst.k = std::make_shared<const GaloisRing>(GaloisRing::of_degree(t.p, 1, inst.d));
    inst.Z = std::make_shared<const GaloisRing>(GaloisRing::prime(t.p, t.n));
    inst.v_prime = descend_rep(G, t.a, inst.A);
    inst.v_hat = descend_rep(G, 1, inst.A);
    inst.rho_w = descend_rep(G, 1, inst.W);

    inst.rho_bar.ring = inst.k;
    inst.rho_bar.dim = t.q;
    inst.rho_w_reduces_to_v_hat = true;
    for (int g = 0; g < G.order(); ++g) {
        inst.rho_bar.images.push_back(mat_reduce(*inst.W, inst.rho_w.rep.images[g], *inst.k));
        if (mat_reduce(*inst.W, inst.rho_w.rep.images[g], *inst.A) != inst.v_hat.rep.images[g])
            inst.rho_w_reduces_to_v_hat = false;
    }

    const std::vector<int> gens = G.generators();
    const LinearModule source = restrict_scalars(inst.v_prime.rep, gens);
    std::vector<IntMat> delta;
    for (const GrMatrix& X : source.action) {
        IntMat M(X.a.size());
        for (std::size_t i = 0; i < X.a.size(); ++i) M[i] = X.a[i].c[0];
        delta.push_back(std::move(M));
    }
    inst.gamma = std::make_shared<const ExtensionGroup>(inst.G, t.p, t.n, source.dim, delta[0], delta[1]);
    inst.hom = hom_module(source, conjugation_module(inst.v_hat.rep, gens));
    inst.psi = inst.hom.generator;
    return inst;
}

GrMatrix psi_of(const Instance& inst, std::int64_t vcode)
{
    const GaloisRing& Z = *inst.Z;
    const std::vector<std::int64_t> v = inst.gamma->decode(vcode);
    std::vector<GrElem> y(static_cast<std::size_t>(inst.psi.rows), Z.zero());
    for (int r = 0; r < inst.psi.rows; ++r)
        for (int c = 0; c < inst.psi.cols; ++c) y[r] = Z.add(y[r], Z.scale(inst.psi.at(r, c), v[c]));
    return unflatten_square(*inst.A, y, inst.tuple.q, Z);
}

TMat nu_embed(const TestRing& R, const GrMatrix& X, const GaloisRing& A)
{
    TMat Y(X.rows, X.cols);
    for (int r = 0; r < X.rows; ++r)
        for (int c = 0; c < X.cols; ++c)
            Y.at(r, c) = R.make(r == c ? R.w_ring().one() : GrElem{}, X.at(r, c), A);
    return Y;
}

TMat embed_w(const TestRing& R, const GrMatrix& X)
{
    TMat Y(X.rows, X.cols);
    for (std::size_t i = 0; i < X.a.size(); ++i) Y.a[i] = R.from_w(X.a[i]);
    return Y;
}

LiftRecord construct_rho_R(const Instance& inst, const TestRing& R, bool zero_psi, Exec exec)
{
    if (R.kind() != RingKind::RModel || R.n() != inst.tuple.n || R.m() != inst.m || R.d() != inst.d)
        throw std::invalid_argument("rho_R needs the R-model with the instance's n, m, d");
    const ExtensionGroup& Gamma = *inst.gamma;
    LiftRecord rec{R, &Gamma, std::vector<TMat>(static_cast<std::size_t>(Gamma.order())), 0, false, true, true};
    const int nk = Gamma.kernel_order();
    std::vector<TMat> nus(static_cast<std::size_t>(nk));
    for_each_index(
        nk,
        [&](std::int64_t v) {
            GrMatrix X = zero_psi ? GrMatrix(inst.tuple.q, inst.tuple.q) : psi_of(inst, v);
            nus[v] = nu_embed(R, X, *inst.A);
        },
        exec);
    for_each_index(
        Gamma.order(),
        [&](std::int64_t x) {
            const int xi = static_cast<int>(x);
            rec.images[x] =
                mat_mul(R, nus[Gamma.vcode_of(xi)], embed_w(R, inst.rho_w.rep.images[Gamma.g_of(xi)]));
        },
        exec);
    for (int x = 0; x < Gamma.order(); ++x) {
        const TMat& X = rec.images[x];
        const GrMatrix& P = inst.rho_w.rep.images[Gamma.g_of(x)];
        for (std::size_t i = 0; i < X.a.size(); ++i)
            if (X.a[i].w != P.a[i]) rec.reduces_to_rho_w = false;
        if (Gamma.g_of(x) == 0 && X != nus[Gamma.vcode_of(x)]) rec.restriction_is_nu_psi = false;
    }
    const std::int64_t n = Gamma.order();
    rec.first_failure = first_hom_failure(
        Gamma, rec.images, [&](const TMat& a, const TMat& b) { return mat_mul(R, a, b); }, exec);
    rec.homomorphism = rec.first_failure == n * n;
    return rec;
}

ActionModule adjoint_module(const Instance& inst, Exec exec)
{
    const MetacyclicGroup& G = *inst.G;
    std::vector<int> all(static_cast<std::size_t>(G.order()));
    for (int g = 0; g < G.order(); ++g) all[g] = g;
    const LinearModule ad = conjugation_module(inst.rho_bar, all);
    std::vector<FpMat> mats;
    for (const GrMatrix& X : ad.action) {
        FpMat M(X.a.size());
        for (std::size_t i = 0; i < X.a.size(); ++i) M[i] = static_cast<std::int32_t>(X.a[i].c[0]);
        mats.push_back(std::move(M));
    }
    const ExtensionGroup& Gamma = *inst.gamma;
    return module_from_function(
        Gamma, inst.tuple.p, inst.d, ad.dim, [&](int x) { return mats[Gamma.g_of(x)]; }, exec);
}

std::vector<TestRing> enumerate_small_extensions(int p, int n, int m, int d)
{
    std::vector<TestRing> out;
    const std::int64_t size_k = ipow(p, d);
    for (ResidueIndex c = 0; c < size_k; ++c) out.push_back(TestRing::case_a(p, n, m, d, c));
    out.push_back(TestRing::case_b(p, n, m, d));
    return out;
}

TwoCocycle obstruction_cocycle(const ActionModule& M, const TestRing& C, const std::vector<TMat>& lift, Exec exec)
{
    const FiniteGroup& G = *M.group;
    const int q = lift.at(0).rows;
    const int d = C.d();
    if (M.D != q * q * d) throw std::invalid_argument("module is not Mat_q(k)");
    std::vector<TMat> inv(lift.size());
    for_each_index(static_cast<std::int64_t>(lift.size()), [&](std::int64_t x) { inv[x] = mat_inverse(C, lift[x]); },
                   exec);
    return cocycle_from(
        M,
        [&](int g, int h, std::int32_t* out) {
            const TMat P = mat_mul(C, mat_mul(C, lift[g], lift[h]), inv[G.mul(g, h)]);
            for (int r = 0; r < q; ++r)
                for (int c = 0; c < q; ++c) {
                    const TElem diff = r == c ? C.sub(P.at(r, c), C.one()) : P.at(r, c);
                    const auto kappa = C.kernel_coefficient(diff);
                    if (!kappa)
                        throw KernelViolation("rho(" + G.describe(g) + ") rho(" + G.describe(h) +
                                              ") rho(gh)^-1 is not in 1 + z Mat_q");
                    residue_coords(*kappa, C.p(), d, out + (r * q + c) * d);
                }
        },
        exec);
}

Unliftability test_unliftability(const LiftRecord& rho_R, const TestRing& C, const ActionModule& M,
                                 const std::vector<int>& gens, Exec exec)
{
    const TestRing& R = rho_R.ring;
    if (C.kind() != RingKind::CaseA && C.kind() != RingKind::CaseB)
        throw NotALift("test ring is not a small extension");
    if (C.quotient_r().name() != R.name()) throw NotALift(C.name() + " does not surject onto " + R.name());
    const FiniteGroup& G = *M.group;
    std::vector<TMat> hat(rho_R.images.size());
    for (std::size_t x = 0; x < hat.size(); ++x) {
        hat[x] = section_matrix(C, rho_R.images[x], R);
        for (std::size_t i = 0; i < hat[x].a.size(); ++i)
            if (C.to_r(hat[x].a[i], R) != rho_R.images[x].a[i]) throw NotALift("section does not reduce to rho_R");
    }
    Unliftability out;
    out.ring = C.name();
    const TwoCocycle o = obstruction_cocycle(M, C, hat, exec);
    out.cocycle_zero = o.is_zero();
    const CocycleCheck chk = check_cocycle_identity(o, gens, 100000, 1, exec);
    out.cocycle_identity = chk.ok;
    out.cocycle_exhaustive = chk.exhaustive;
    out.triples_checked = chk.triples;
    if (!chk.ok) return out;
    const CoboundarySolution sol = is_coboundary(o, gens, exec);
    out.equations_rank = sol.equations_rank;
    out.unknowns = sol.unknowns;
    if (!sol.solvable) {
        out.obstructed = true;
        return out;
    }
    // rho'(g) = (1 - z c(g)) rho-hat(g)
    const int q = hat[0].rows, d = C.d(), D = M.D;
    out.lift.resize(hat.size());
    for (std::size_t x = 0; x < hat.size(); ++x) {
        TMat U = identity_matrix(C, q);
        for (int r = 0; r < q; ++r)
            for (int c = 0; c < q; ++c) {
                const ResidueIndex kappa = coords_residue(sol.cochain.data() + x * D + (r * q + c) * d, C.p(), d);
                U.at(r, c) = C.sub(U.at(r, c), C.z_times(kappa));
            }
        out.lift[x] = mat_mul(C, U, hat[x]);
    }
    const std::int64_t n = G.order();
    const std::int64_t f =
        first_hom_failure(G, out.lift, [&](const TMat& a, const TMat& b) { return mat_mul(C, a, b); }, exec);
    out.lift_verified = sol.validated && f == n * n;
    return out;
}

AlphaDecomposition extract_alpha(const TestRing& C, const TMat& image, const GrMatrix& psi_g, const GaloisRing& A)
{
    const int q = image.rows;
    for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c)
            if (image.at(r, c).w != (r == c ? C.w_ring().one() : GrElem{}))
                throw DecompositionFailure("image is not the identity modulo t");
    const GaloisRing& T = C.t_ring();
    AlphaDecomposition out{GrMatrix(q, q), GrMatrix(q, q), GrMatrix(q, q), true};
    for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) {
            const GrElem& a = image.at(r, c).t;
            const GrElem alpha = T.teichmuller(T.residue_index(a));
            out.alpha.at(r, c) = alpha;
            out.xi.at(r, c) = T.divide_by_p_power(T.sub(a, alpha), 1);
            out.beta.at(r, c) = image.at(r, c).e;
            if (T.residue_index(alpha) != A.residue_index(psi_g.at(r, c))) out.matches_psi = false;
        }
    return out;
}

std::vector<int> small_generating_set(const FiniteGroup& G)
{
    const int n = G.order();
    if (n <= 5000)
        for (int x = 1; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (static_cast<int>(closure_size_check(G, {x, y}).size()) == n) return {x, y};
    return G.generators();
}

BruteForceCount brute_force_def_count(const FiniteGroup& G, const std::vector<GrMatrix>& rho_bar, const GaloisRing& k,
                                      const TestRing& A, std::int64_t max_tuples, Exec exec)
{
    BruteForceCount out;
    out.generators = small_generating_set(G);
    const CayleyTree tree = cayley_tree(G, out.generators);
    const int q = rho_bar.at(0).rows;
    const std::vector<TElem> mA = A.maximal_ideal(100000);
    const std::int64_t per_matrix = ipow(static_cast<std::int64_t>(mA.size()), q * q);
    const int ng = static_cast<int>(out.generators.size());
    std::int64_t tuples = 1;
    for (int j = 0; j < ng; ++j) {
        if (tuples > max_tuples / per_matrix) throw TooLarge("brute force would enumerate too many generator tuples");
        tuples *= per_matrix;
    }
    out.tuples = tuples;
    out.kernel_group = per_matrix;

    std::vector<TMat> base;
    for (int s : out.generators) {
        TMat B(q, q);
        for (int i = 0; i < q * q; ++i) B.a[i] = A.from_residue(k.residue_index(rho_bar[s].a[i]));
        base.push_back(B);
    }
    auto perturbation = [&](std::int64_t code) {
        TMat X(q, q);
        for (int i = 0; i < q * q; ++i) {
            X.a[i] = mA[code % static_cast<std::int64_t>(mA.size())];
            code /= static_cast<std::int64_t>(mA.size());
        }
        return X;
    };
    std::vector<TMat> conj, conj_inv;
    for (std::int64_t c = 0; c < per_matrix; ++c) {
        conj.push_back(mat_add(A, identity_matrix(A, q), perturbation(c)));
        conj_inv.push_back(mat_inverse(A, conj.back()));
    }
    const std::int64_t n = G.order();
    std::vector<std::vector<TElem>> canon(static_cast<std::size_t>(tuples));
    std::vector<char> valid(static_cast<std::size_t>(tuples), 0);
    for_each_index(
        tuples,
        [&](std::int64_t idx) {
            std::vector<TMat> gen_images;
            std::int64_t code = idx;
            for (int j = 0; j < ng; ++j) {
                gen_images.push_back(mat_add(A, base[j], perturbation(code % per_matrix)));
                code /= per_matrix;
            }
            auto mul = [&](const TMat& a, const TMat& b) { return mat_mul(A, a, b); };
            const auto img = images_from_generators(G, tree, gen_images, identity_matrix(A, q), mul);
            if (first_hom_failure(G, img, mul, Exec::Serial) != n * n) return;
            valid[idx] = 1;
            std::vector<TElem> best;
            for (std::size_t c = 0; c < conj.size(); ++c) {
                std::vector<TElem> cand;
                for (const TMat& X : gen_images) {
                    const TMat Y = mat_mul(A, mat_mul(A, conj[c], X), conj_inv[c]);
                    cand.insert(cand.end(), Y.a.begin(), Y.a.end());
                }
                if (best.empty() || cand < best) best = std::move(cand);
            }
            canon[idx] = std::move(best);
        },
        exec);
    std::vector<std::vector<TElem>> reps;
    for (std::int64_t i = 0; i < tuples; ++i)
        if (valid[i]) {
            ++out.lifts;
            reps.push_back(std::move(canon[i]));
        }
    std::sort(reps.begin(), reps.end());
    out.classes = std::unique(reps.begin(), reps.end()) - reps.begin();
    return out;
}

std::int64_t hom_count_R_to_A(int n, const TestRing& A)
{
    const TElem pn = A.from_int(ipow(A.p(), n));
    std::int64_t count = 0;
    for (const TElem& x : A.maximal_ideal())
        if (A.is_zero(A.mul(pn, x)) && A.is_zero(A.mul(x, x))) ++count;
    return count;
}

}  // namespace defring
