#include "defring/repn.hpp"

#include "defring/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace defring {

namespace {

std::int64_t md(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

// j with u^j = value mod ell, or -1.
int sigma_exponent(const MetacyclicGroup& G, std::int64_t value)
{
    value = md(value, G.ell());
    for (int j = 0; j < G.q(); ++j)
        if (G.nu(j) == value) return j;
    return -1;
}

std::vector<GrElem> column(const GrMatrix& X, int c)
{
    std::vector<GrElem> v(X.rows);
    for (int i = 0; i < X.rows; ++i) v[i] = X.at(i, c);
    return v;
}

}  // namespace

RootOfUnity big_root_of_unity(int p, int m, int ell, int min_degree)
{
    if (gcd64(p, ell) != 1) throw NoRootOfUnity("p divides ell");
    const std::int64_t ord = multiplicative_order(p, ell);
    const std::int64_t D = std::lcm(ord, static_cast<std::int64_t>(min_degree));
    if (D > kMaxDegree)
        throw NoRootOfUnity("a primitive " + std::to_string(ell) + "-th root of unity needs residue degree " +
                            std::to_string(D) + " > " + std::to_string(kMaxDegree));
    auto ring = std::make_shared<const GaloisRing>(GaloisRing::of_degree(p, m, static_cast<int>(D)));
    const GaloisRing field(RingSpec{p, 1, static_cast<int>(D), ring->spec().defining_poly});
    const std::int64_t group_order = field.residue_size() - 1;
    const auto factors = prime_factors(group_order);
    ResidueIndex gen = -1;
    for (ResidueIndex r = 1; r < field.residue_size() && gen < 0; ++r) {
        const GrElem x = field.residue_lift(r);
        bool primitive = true;
        for (std::int64_t f : factors)
            if (field.pow(x, static_cast<std::uint64_t>(group_order / f)) == field.one()) primitive = false;
        if (primitive) gen = r;
    }
    if (gen < 0) throw std::logic_error("no primitive element found");
    RootOfUnity out;
    out.ring = ring;
    out.ell = ell;
    out.zeta_index = field.residue_index(
        field.pow(field.residue_lift(gen), static_cast<std::uint64_t>(group_order / ell)));
    out.zeta = ring->teichmuller(out.zeta_index);
    return out;
}

MatrixRep rep_from_generators(const FiniteGroup& G, std::shared_ptr<const GaloisRing> ring,
                              const std::vector<GrMatrix>& gen_images)
{
    MatrixRep rho;
    rho.ring = std::move(ring);
    rho.dim = gen_images.empty() ? 0 : gen_images[0].rows;
    const auto tree = cayley_tree(G, G.generators());
    const GaloisRing& R = *rho.ring;
    rho.images = images_from_generators(G, tree, gen_images, identity_matrix(R, rho.dim),
                                        [&](const GrMatrix& x, const GrMatrix& y) { return mat_mul(R, x, y); });
    return rho;
}

std::int64_t first_rep_failure(const FiniteGroup& G, const MatrixRep& rho, Exec exec)
{
    const GaloisRing& R = *rho.ring;
    return first_hom_failure(
        G, rho.images, [&](const GrMatrix& x, const GrMatrix& y) { return mat_mul(R, x, y); }, exec);
}

MatrixRep induced_rep_big(const MetacyclicGroup& G, std::int64_t a, const RootOfUnity& root)
{
    const GaloisRing& R = *root.ring;
    if (root.ell != G.ell() || (R.residue_size() - 1) % G.ell() != 0)
        throw NoRootOfUnity("ring has no primitive ell-th root of unity");
    const int q = G.q();
    GrMatrix T(q, q), S(q, q);
    for (int j = 0; j < q; ++j) {
        const std::int64_t e = md(a * G.nu(-j), G.ell());
        T.at(j, j) = R.pow(root.zeta, static_cast<std::uint64_t>(e));
        S.at((j + 1) % q, j) = R.one();
    }
    return rep_from_generators(G, root.ring, {T, S});
}

std::vector<CyclotomicSum> char_of_induced(const MetacyclicGroup& G, std::int64_t a)
{
    std::vector<CyclotomicSum> values(G.order(), cyc_constant(G.ell(), 0));
    const auto H = G.H();
    for (int c = 0; c < G.ell(); ++c) {
        std::vector<std::int64_t> exps;
        for (std::int64_t h : H) exps.push_back(md(a * c * h, G.ell()));
        values[G.element(c, 0)] = cyc_sum(G.ell(), exps);
    }
    return values;
}

Descent descend_rep(const MetacyclicGroup& G, std::int64_t a, std::shared_ptr<const GaloisRing> target)
{
    const int ell = G.ell(), q = G.q();
    const auto H = G.H();
    std::vector<std::int64_t> exps;
    for (std::int64_t h : H) exps.push_back(md(a * h, ell));
    if (std::set<std::int64_t>(exps.begin(), exps.end()).size() != exps.size())
        throw NotDescendable("eigenvalue exponents a*h are not distinct");

    const RootOfUnity root = big_root_of_unity(target->p(), target->m(), ell, target->d());
    const GaloisRing& B = *root.ring;
    std::vector<GrElem> fb{B.one()};
    for (std::int64_t e : exps) {
        const GrElem r = B.pow(root.zeta, static_cast<std::uint64_t>(e));
        std::vector<GrElem> next(fb.size() + 1);
        for (std::size_t i = 0; i < fb.size(); ++i) {
            next[i + 1] = B.add(next[i + 1], fb[i]);
            next[i] = B.sub(next[i], B.mul(r, fb[i]));
        }
        fb = std::move(next);
    }
    const SubringEmbedding emb(root.ring, target);
    const GaloisRing& W = *target;
    Descent out;
    for (const auto& c : fb) {
        try {
            out.f.push_back(emb.coerce(c));
        } catch (const NotInSubring&) {
            throw NotDescendable("coefficients of f are not fixed by frobenius^d");
        }
    }
    GrMatrix T(q, q);
    for (int i = 0; i + 1 < q; ++i) T.at(i + 1, i) = W.one();
    for (int i = 0; i < q; ++i) T.at(i, q - 1) = W.neg(out.f[i]);
    // Coordinates of x^k mod f for k < ell.
    std::vector<std::vector<GrElem>> powers(ell);
    powers[0].assign(q, W.zero());
    powers[0][0] = W.one();
    for (int k = 1; k < ell; ++k) powers[k] = mat_vec(W, T, std::span<const GrElem>(powers[k - 1]));
    GrMatrix S(q, q);
    for (int j = 0; j < q; ++j) {
        const auto& v = powers[md(static_cast<std::int64_t>(j) * G.u(), ell)];
        for (int i = 0; i < q; ++i) S.at(i, j) = v[i];
    }
    out.rep = rep_from_generators(G, target, {T, S});
    const GrMatrix I = identity_matrix(W, q);
    out.relations = mat_pow(W, T, ell) == I && mat_pow(W, S, q) == I &&
                    mat_mul(W, S, T) == mat_mul(W, mat_pow(W, T, G.u()), S);
    const std::int64_t n = G.order();
    out.homomorphism = first_rep_failure(G, out.rep) == n * n;
    const MatrixRep big = induced_rep_big(G, a, root);
    out.charpolys_match = true;
    for (int g = 0; g < G.order(); ++g) {
        GrMatrix lifted = out.rep.images[g];
        for (auto& e : lifted.a) e = emb.embed(e);
        if (charpoly(B, lifted) != charpoly(B, big.images[g])) out.charpolys_match = false;
    }
    return out;
}

Multiplicity multiplicity_by_character(const MetacyclicGroup& G, std::int64_t a)
{
    const int ell = G.ell();
    const auto H = G.H();
    Multiplicity out;
    for (std::int64_t h1 : H)
        for (std::int64_t h2 : H)
            for (std::int64_t h3 : H)
                if (md(a * h1 + h2 - h3, ell) == 0) out.S.push_back({h1, h2, h3});
    const auto count = static_cast<std::int64_t>(out.S.size());
    if (count % G.q() != 0) throw NotIntegral("q does not divide #S");
    out.mult = count / G.q();
    CyclotomicSum total = cyc_constant(ell, 0);
    for (int c = 0; c < ell; ++c) {
        std::vector<std::int64_t> ea, ep, en;
        for (std::int64_t h : H) {
            ea.push_back(md(a * c * h, ell));
            ep.push_back(md(c * h, ell));
            en.push_back(md(-c * h, ell));
        }
        total = cyc_add(total, cyc_mul(cyc_sum(ell, ea), cyc_mul(cyc_sum(ell, en), cyc_sum(ell, ep))));
    }
    std::int64_t value = 0;
    out.agrees = cyc_as_integer(total, value) && value == std::int64_t{G.q()} * ell * out.mult;
    out.inner_product_times_order = value;
    return out;
}

GrMatrix flatten_matrix(const GaloisRing& A, const GrMatrix& X, const GaloisRing& Z)
{
    const int d = A.d();
    GrMatrix out(X.rows * d, X.cols * d);
    std::vector<GrElem> xpow(d);
    xpow[0] = A.one();
    for (int i = 1; i < d; ++i) xpow[i] = A.mul(xpow[i - 1], A.root());
    for (int r = 0; r < X.rows; ++r)
        for (int c = 0; c < X.cols; ++c) {
            const GrElem& alpha = X.at(r, c);
            if (A.is_zero(alpha)) continue;
            for (int i = 0; i < d; ++i) {
                const GrElem prod = A.mul(alpha, xpow[i]);
                for (int k = 0; k < d; ++k) out.at(r * d + k, c * d + i) = Z.from_int(prod.c[k]);
            }
        }
    return out;
}

std::vector<GrElem> flatten_vector(const GaloisRing& A, const std::vector<GrElem>& v, const GaloisRing& Z)
{
    const int d = A.d();
    std::vector<GrElem> out(v.size() * d);
    for (std::size_t j = 0; j < v.size(); ++j)
        for (int i = 0; i < d; ++i) out[j * d + i] = Z.from_int(v[j].c[i]);
    return out;
}

std::vector<GrElem> unflatten_vector(const GaloisRing& A, const std::vector<GrElem>& v, const GaloisRing& /*Z*/)
{
    const int d = A.d();
    std::vector<GrElem> out(v.size() / d);
    for (std::size_t j = 0; j < out.size(); ++j)
        for (int i = 0; i < d; ++i) out[j].c[i] = v[j * d + i].c[0];
    return out;
}

GrMatrix unflatten_square(const GaloisRing& A, const std::vector<GrElem>& v, int q, const GaloisRing& Z)
{
    const auto entries = unflatten_vector(A, v, Z);
    GrMatrix X(q, q);
    for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) X.at(r, c) = entries[r * q + c];
    return X;
}

LinearModule restrict_scalars(const MatrixRep& rho, const std::vector<int>& elements)
{
    const GaloisRing& A = *rho.ring;
    LinearModule mod;
    mod.base = std::make_shared<const GaloisRing>(GaloisRing::prime(A.p(), A.m()));
    mod.dim = rho.dim * A.d();
    mod.a_degree = A.d();
    for (int g : elements) mod.action.push_back(flatten_matrix(A, rho.images[g], *mod.base));
    mod.a_mult = flatten_matrix(A, mat_scale(A, identity_matrix(A, rho.dim), A.root()), *mod.base);
    return mod;
}

LinearModule conjugation_module(const MatrixRep& rho, const std::vector<int>& elements)
{
    const GaloisRing& A = *rho.ring;
    const int q = rho.dim, d = A.d();
    LinearModule mod;
    mod.base = std::make_shared<const GaloisRing>(GaloisRing::prime(A.p(), A.m()));
    const GaloisRing& Z = *mod.base;
    mod.dim = q * q * d;
    mod.a_degree = d;
    std::vector<GrElem> xpow(d);
    xpow[0] = A.one();
    for (int i = 1; i < d; ++i) xpow[i] = A.mul(xpow[i - 1], A.root());
    for (int g : elements) {
        const GrMatrix& P = rho.images[g];
        const GrMatrix Pinv = mat_inverse(A, P);
        GrMatrix Mg(mod.dim, mod.dim);
        for (int r = 0; r < q; ++r)
            for (int c = 0; c < q; ++c)
                for (int i = 0; i < d; ++i) {
                    const int col = (r * q + c) * d + i;
                    for (int a = 0; a < q; ++a)
                        for (int b = 0; b < q; ++b) {
                            const GrElem y = A.mul(xpow[i], A.mul(P.at(a, r), Pinv.at(c, b)));
                            for (int k = 0; k < d; ++k) Mg.at((a * q + b) * d + k, col) = Z.from_int(y.c[k]);
                        }
                }
        mod.action.push_back(std::move(Mg));
    }
    mod.a_mult = flatten_matrix(A, mat_scale(A, identity_matrix(A, q * q), A.root()), Z);
    return mod;
}

HomModule hom_module(const LinearModule& source, const LinearModule& target)
{
    if (source.action.size() != target.action.size())
        throw std::invalid_argument("hom_module: action lists differ in length");
    const GaloisRing& Z = *source.base;
    const int sd = source.dim, td = target.dim;
    const int unknowns = sd * td;
    const int gens = static_cast<int>(source.action.size());
    GrMatrix E(gens * td * sd, unknowns);
    for (int k = 0; k < gens; ++k) {
        const GrMatrix& T = target.action[k];
        const GrMatrix& S = source.action[k];
        for (int i = 0; i < td; ++i)
            for (int j = 0; j < sd; ++j) {
                const int row = (k * td + i) * sd + j;
                for (int l = 0; l < td; ++l)
                    E.at(row, l * sd + j) = Z.add(E.at(row, l * sd + j), T.at(i, l));
                for (int l = 0; l < sd; ++l)
                    E.at(row, i * sd + l) = Z.sub(E.at(row, i * sd + l), S.at(l, j));
            }
    }
    const std::vector<GrElem> zero(E.rows);
    const auto sol = solve_linear(Z, E, zero);
    HomModule out;
    out.source_dim = sd;
    out.target_dim = td;
    out.basis = howell_form(Z, sol->kernel, false);
    out.log_size = howell_log_size(Z, out.basis);
    for (int v : smith_valuations(Z, sol->kernel)) out.invariant_factors.push_back(Z.m() - v);
    std::sort(out.invariant_factors.begin(), out.invariant_factors.end());

    auto as_matrix = [&](const GrMatrix& rows, int r) {
        GrMatrix Phi(td, sd);
        for (int i = 0; i < unknowns; ++i) Phi.a[i] = rows.at(r, i);
        return Phi;
    };
    out.a_stable = true;
    for (int r = 0; r < out.basis.form.rows; ++r) {
        const GrMatrix moved = mat_mul(Z, target.a_mult, as_matrix(out.basis.form, r));
        const auto rem = howell_reduce(Z, out.basis, moved.a);
        if (!std::all_of(rem.begin(), rem.end(), [&](const GrElem& e) { return Z.is_zero(e); }))
            out.a_stable = false;
    }
    if (out.basis.form.rows > 0) {
        out.generator = as_matrix(out.basis.form, 0);
        const int d = target.a_degree;
        GrMatrix span(d, unknowns);
        GrMatrix cur = out.generator;
        for (int i = 0; i < d; ++i) {
            std::copy(cur.a.begin(), cur.a.end(), span.a.begin() + static_cast<std::ptrdiff_t>(i) * unknowns);
            cur = mat_mul(Z, target.a_mult, cur);
        }
        out.free_rank_one =
            out.log_size == Z.m() * d && howell_form(Z, span, false).form == out.basis.form;
    }
    return out;
}

bool psi_injective(const GaloisRing& Z, const GrMatrix& psi)
{
    const std::vector<GrElem> zero(psi.rows);
    const auto sol = solve_linear(Z, psi, zero);
    return sol && sol->kernel.rows == 0;
}

CommutatorWitness commutator_witness(const GaloisRing& A, const GrMatrix& psi, int q, std::int64_t max_pairs)
{
    const GaloisRing k(RingSpec{A.p(), 1, A.d(), A.spec().defining_poly});
    const GaloisRing Z = GaloisRing::prime(A.p(), A.m());
    const int kdim = psi.cols;
    std::vector<GrMatrix> X(kdim);
    for (int i = 0; i < kdim; ++i) X[i] = mat_reduce(A, unflatten_square(A, column(psi, i), q, Z), k);
    CommutatorWitness w;
    auto try_pair = [&](const GrMatrix& a, const GrMatrix& b, const std::vector<std::int64_t>& v1,
                        const std::vector<std::int64_t>& v2) {
        ++w.pairs_checked;
        const GrMatrix c = mat_sub(k, mat_mul(k, a, b), mat_mul(k, b, a));
        if (mat_is_zero(k, c)) return false;
        w.found = true;
        w.v1 = v1;
        w.v2 = v2;
        w.commutator = c;
        for (int col = 0; col < q && w.column < 0; ++col)
            for (int r = 0; r < q; ++r)
                if (!k.is_zero(c.at(r, col))) {
                    w.column = col;
                    break;
                }
        return true;
    };
    for (int i = 0; i < kdim; ++i)
        for (int j = i + 1; j < kdim; ++j) {
            std::vector<std::int64_t> e1(kdim, 0), e2(kdim, 0);
            e1[i] = 1;
            e2[j] = 1;
            if (try_pair(X[i], X[j], e1, e2)) return w;
        }
    // Exhaustive over K/pK.
    std::int64_t count = 1;
    for (int i = 0; i < kdim && count <= max_pairs; ++i) count *= A.p();
    if (count * count > max_pairs) return w;
    auto vec_of = [&](std::int64_t code) {
        std::vector<std::int64_t> v(kdim);
        for (int i = 0; i < kdim; ++i) {
            v[i] = code % A.p();
            code /= A.p();
        }
        return v;
    };
    auto image = [&](const std::vector<std::int64_t>& v) {
        GrMatrix m(q, q);
        for (int i = 0; i < kdim; ++i)
            if (v[i] != 0) m = mat_add(k, m, mat_scale(k, X[i], k.from_int(v[i])));
        return m;
    };
    for (std::int64_t c1 = 0; c1 < count; ++c1)
        for (std::int64_t c2 = c1 + 1; c2 < count; ++c2) {
            const auto v1 = vec_of(c1), v2 = vec_of(c2);
            if (try_pair(image(v1), image(v2), v1, v2)) return w;
        }
    return w;
}

ExplicitWitness explicit_witness(const MetacyclicGroup& G, std::int64_t a, int p)
{
    const int ell = G.ell(), q = G.q();
    const auto H = G.H();
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (std::int64_t h2 : H)
        for (std::int64_t h3 : H)
            if (md(h3 - h2 - a, ell) == 0) pairs.emplace_back(h2, h3);
    if (pairs.size() != 1)
        throw HypothesisFailure("expected exactly one pair (h2, h3) with h3 - h2 = a, found " +
                                std::to_string(pairs.size()));
    ExplicitWitness w;
    w.h2 = pairs[0].first;
    w.h3 = pairs[0].second;
    const std::int64_t h2inv = mod_inverse(w.h2, ell), h3inv = mod_inverse(w.h3, ell);

    const RootOfUnity root = big_root_of_unity(p, 1, ell);
    const GaloisRing& F = *root.ring;
    const MatrixRep rho_w = induced_rep_big(G, a, root);
    const MatrixRep rho_x = induced_rep_big(G, 1, root);

    // f(w_j) = E_{s3, s2} with nu(s2) = u^j h2^-1, nu(s3) = u^j h3^-1.
    std::vector<GrMatrix> f(q);
    for (int j = 0; j < q; ++j) {
        const int j2 = sigma_exponent(G, G.nu(j) * h2inv);
        const int j3 = sigma_exponent(G, G.nu(j) * h3inv);
        f[j] = GrMatrix(q, q);
        f[j].at(j3, j2) = F.one();
    }
    w.equivariant = true;
    for (int g : G.generators()) {
        const GrMatrix& Pw = rho_w.images[g];
        const GrMatrix& Px = rho_x.images[g];
        const GrMatrix Pxinv = mat_inverse(F, Px);
        for (int j = 0; j < q; ++j) {
            GrMatrix lhs(q, q);
            for (int i = 0; i < q; ++i) lhs = mat_add(F, lhs, mat_scale(F, f[i], Pw.at(i, j)));
            const GrMatrix rhs = mat_mul(F, Px, mat_mul(F, f[j], Pxinv));
            if (lhs != rhs) w.equivariant = false;
        }
    }
    w.s = sigma_exponent(G, w.h2 * h3inv);
    w.s2 = sigma_exponent(G, h2inv);
    w.s3 = sigma_exponent(G, h3inv);
    w.s3_prime = sigma_exponent(G, w.h2 * h3inv % ell * h3inv);
    std::vector<GrElem> x_s2(q);
    x_s2[w.s2] = F.one();
    const auto fe_x = mat_vec(F, f[0], std::span<const GrElem>(x_s2));
    const auto fs_x = mat_vec(F, f[w.s], std::span<const GrElem>(x_s2));
    w.fs_after_fe = mat_vec(F, f[w.s], std::span<const GrElem>(fe_x));
    w.fe_after_fs = mat_vec(F, f[0], std::span<const GrElem>(fs_x));
    w.noncommuting = w.fs_after_fe != w.fe_after_fs;
    return w;
}

}  // namespace defring
