#include "defring/cohomology.hpp"

#include "defring/errors.hpp"
#include "defring/galois_ring.hpp"
#include "defring/matrix.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace defring {

namespace {

std::int32_t modp(std::int64_t v, int p)
{
    v %= p;
    return static_cast<std::int32_t>(v < 0 ? v + p : v);
}

FpMat fp_mul(int D, int p, const std::int32_t* x, const std::int32_t* y)
{
    FpMat z(static_cast<std::size_t>(D) * D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < D; ++k) s += std::int64_t{x[i * D + k]} * y[k * D + j];
            z[i * D + j] = modp(s, p);
        }
    return z;
}

bool fp_equal(int D, const std::int32_t* x, const std::int32_t* y)
{
    for (int i = 0; i < D * D; ++i)
        if (x[i] != y[i]) return false;
    return true;
}

void check_module(const ActionModule& M, Exec exec)
{
    const FiniteGroup& G = *M.group;
    const std::int64_t n = G.order();
    const int D = M.D;
    FpMat I(static_cast<std::size_t>(D) * D, 0);
    for (int i = 0; i < D; ++i) I[i * D + i] = 1;
    if (!fp_equal(D, M.action(0), I.data()))
        throw HomomorphismFailure("identity does not act trivially");
    std::int64_t fail;
    if (n <= 1500) {
        fail = first_failure(
            n * n,
            [&](std::int64_t idx) {
                const int x = static_cast<int>(idx / n), y = static_cast<int>(idx % n);
                const FpMat z = fp_mul(D, M.p, M.action(x), M.action(y));
                return !fp_equal(D, z.data(), M.action(G.mul(x, y)));
            },
            exec);
        if (fail < n * n)
            throw HomomorphismFailure("module action fails on pair (" + G.describe(static_cast<int>(fail / n)) +
                                      ", " + G.describe(static_cast<int>(fail % n)) + ")");
        return;
    }
    const std::vector<int> gens = G.generators();
    const std::int64_t ng = static_cast<std::int64_t>(gens.size());
    fail = first_failure(
        n * ng,
        [&](std::int64_t idx) {
            const int x = static_cast<int>(idx / ng), s = gens[idx % ng];
            const FpMat z = fp_mul(D, M.p, M.action(x), M.action(s));
            return !fp_equal(D, z.data(), M.action(G.mul(x, s)));
        },
        exec);
    if (fail < n * ng) throw HomomorphismFailure("module action fails on a generator pair");
}

// Affine propagation of a 1-cochain determined by its generator values x_j.
// Row r of element g holds the coefficients of c(g)_r in the unknowns, then the constant.
struct Propagation {
    int D = 0;
    int unknowns = 0;
    std::vector<std::int32_t> L;

    std::int32_t* row(int g, int r) { return L.data() + (static_cast<std::size_t>(g) * D + r) * (unknowns + 1); }
    const std::int32_t* row(int g, int r) const
    {
        return L.data() + (static_cast<std::size_t>(g) * D + r) * (unknowns + 1);
    }
};

// c(g s) = c(g) + g c(s) - o(g, s) along the tree; c(e) = o(e, e).
Propagation propagate(const ActionModule& M, const CayleyTree& tree, const TwoCocycle* o)
{
    const FiniteGroup& G = *M.group;
    Propagation P;
    P.D = M.D;
    P.unknowns = static_cast<int>(tree.gens.size()) * M.D;
    const int w = P.unknowns + 1;
    P.L.assign(static_cast<std::size_t>(G.order()) * M.D * w, 0);
    if (o)
        for (int r = 0; r < M.D; ++r) P.row(0, r)[P.unknowns] = o->at(0, 0)[r];
    for (std::size_t k = 1; k < tree.order.size(); ++k) {
        const int x = tree.order[k];
        const int g = tree.parent[x];
        const int j = tree.via[x];
        const std::int32_t* act = M.action(g);
        for (int r = 0; r < M.D; ++r) {
            std::int32_t* dst = P.row(x, r);
            const std::int32_t* src = P.row(g, r);
            for (int c = 0; c < w; ++c) dst[c] = src[c];
            for (int c = 0; c < M.D; ++c) dst[j * M.D + c] = modp(std::int64_t{dst[j * M.D + c]} + act[r * M.D + c], M.p);
            if (o) dst[P.unknowns] = modp(std::int64_t{dst[P.unknowns]} - o->at(g, tree.gens[j])[r], M.p);
        }
    }
    return P;
}

// Collects every condition c(g s) = c(g) + g c(s) - o(g, s) and c(s) = x_s.
FpEliminator propagation_equations(const ActionModule& M, const CayleyTree& tree, const Propagation& P,
                                   const TwoCocycle* o)
{
    const FiniteGroup& G = *M.group;
    const int D = M.D, p = M.p, nu = P.unknowns;
    FpEliminator E(p, nu);
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(nu));
    for (std::size_t j = 0; j < tree.gens.size(); ++j) {
        const int s = tree.gens[j];
        for (int r = 0; r < D; ++r) {
            const std::int32_t* ls = P.row(s, r);
            for (int c = 0; c < nu; ++c) coeffs[c] = ls[c];
            coeffs[j * D + r] -= 1;
            E.add(coeffs, -std::int64_t{ls[nu]});
        }
    }
    for (int g = 0; g < G.order(); ++g) {
        const std::int32_t* act = M.action(g);
        for (std::size_t j = 0; j < tree.gens.size(); ++j) {
            const int s = tree.gens[j];
            const int gs = G.mul(g, s);
            if (tree.parent[gs] == g && tree.via[gs] == static_cast<int>(j)) continue;
            for (int r = 0; r < D; ++r) {
                const std::int32_t* lgs = P.row(gs, r);
                const std::int32_t* lg = P.row(g, r);
                for (int c = 0; c < nu; ++c) coeffs[c] = std::int64_t{lgs[c]} - lg[c];
                for (int c = 0; c < D; ++c) coeffs[j * D + c] -= act[r * D + c];
                std::int64_t constant = std::int64_t{lgs[nu]} - lg[nu];
                if (o) constant += o->at(g, s)[r];
                E.add(coeffs, -constant);
            }
        }
    }
    return E;
}

}  // namespace

FpEliminator::FpEliminator(int p, int vars) : p_(p), vars_(vars) {}

bool FpEliminator::add(std::span<const std::int64_t> coeffs, std::int64_t rhs)
{
    if (static_cast<int>(coeffs.size()) != vars_) throw std::invalid_argument("FpEliminator: row length");
    std::vector<std::int32_t> row(static_cast<std::size_t>(vars_) + 1);
    for (int c = 0; c < vars_; ++c) row[c] = modp(coeffs[c], p_);
    row[vars_] = modp(rhs, p_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::int32_t f = row[pivots_[i]];
        if (f == 0) continue;
        const auto& src = rows_[i];
        for (int c = pivots_[i]; c <= vars_; ++c) row[c] = modp(row[c] - std::int64_t{f} * src[c], p_);
    }
    int pivot = -1;
    for (int c = 0; c < vars_ && pivot < 0; ++c)
        if (row[c] != 0) pivot = c;
    if (pivot < 0) {
        if (row[vars_] != 0) consistent_ = false;
        return false;
    }
    const std::int64_t inv = mod_inverse(row[pivot], p_);
    for (int c = pivot; c <= vars_; ++c) row[c] = modp(row[c] * inv, p_);
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

std::vector<std::int32_t> FpEliminator::particular() const
{
    std::vector<std::int32_t> y(static_cast<std::size_t>(vars_), 0);
    for (std::size_t k = rows_.size(); k-- > 0;) {
        const auto& row = rows_[k];
        std::int64_t v = row[vars_];
        for (int c = pivots_[k] + 1; c < vars_; ++c) v -= std::int64_t{row[c]} * y[c];
        y[pivots_[k]] = modp(v, p_);
    }
    return y;
}

std::vector<std::vector<std::int32_t>> FpEliminator::kernel() const
{
    std::vector<char> is_pivot(static_cast<std::size_t>(vars_), 0);
    for (int c : pivots_) is_pivot[c] = 1;
    std::vector<std::vector<std::int32_t>> out;
    for (int f = 0; f < vars_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::int32_t> y(static_cast<std::size_t>(vars_), 0);
        y[f] = 1;
        for (std::size_t k = rows_.size(); k-- > 0;) {
            const auto& row = rows_[k];
            std::int64_t v = 0;
            for (int c = pivots_[k] + 1; c < vars_; ++c) v -= std::int64_t{row[c]} * y[c];
            y[pivots_[k]] = modp(v, p_);
        }
        out.push_back(std::move(y));
    }
    return out;
}

FpMat ActionModule::action_matrix(int g) const
{
    const std::int32_t* a = action(g);
    return FpMat(a, a + static_cast<std::size_t>(D) * D);
}

void ActionModule::act(int g, const std::int32_t* v, std::int32_t* out) const
{
    const std::int32_t* a = action(g);
    for (int i = 0; i < D; ++i) {
        std::int64_t s = 0;
        for (int k = 0; k < D; ++k) s += std::int64_t{a[i * D + k]} * v[k];
        out[i] = modp(s, p);
    }
}

ActionModule module_from_generators(const FiniteGroup& G, int p, int d, int D, const std::vector<int>& gens,
                                    const std::vector<FpMat>& gen_actions, Exec exec)
{
    if (gens.size() != gen_actions.size()) throw std::invalid_argument("one action matrix per generator");
    const CayleyTree tree = cayley_tree(G, gens);
    FpMat I(static_cast<std::size_t>(D) * D, 0);
    for (int i = 0; i < D; ++i) I[i * D + i] = 1;
    const auto images = images_from_generators(G, tree, gen_actions, I, [&](const FpMat& x, const FpMat& y) {
        return fp_mul(D, p, x.data(), y.data());
    });
    ActionModule M{&G, p, d, D, {}};
    M.mats.reserve(static_cast<std::size_t>(G.order()) * D * D);
    for (const auto& m : images) M.mats.insert(M.mats.end(), m.begin(), m.end());
    check_module(M, exec);
    return M;
}

ActionModule module_from_function(const FiniteGroup& G, int p, int d, int D,
                                  const std::function<FpMat(int)>& action, Exec exec)
{
    ActionModule M{&G, p, d, D, {}};
    M.mats.resize(static_cast<std::size_t>(G.order()) * D * D);
    for_each_index(
        G.order(),
        [&](std::int64_t g) {
            const FpMat m = action(static_cast<int>(g));
            if (m.size() != static_cast<std::size_t>(D) * D) throw std::invalid_argument("action matrix size");
            std::copy(m.begin(), m.end(), M.mats.begin() + g * D * D);
        },
        exec);
    check_module(M, exec);
    return M;
}

H1Result h1_dim(const ActionModule& M, const std::vector<int>& gens)
{
    const CayleyTree tree = cayley_tree(*M.group, gens);
    const int D = M.D;
    H1Result out;
    FpEliminator fixed(M.p, D);
    std::vector<std::int64_t> row(static_cast<std::size_t>(D));
    for (int s : gens) {
        const std::int32_t* a = M.action(s);
        for (int r = 0; r < D; ++r) {
            for (int c = 0; c < D; ++c) row[c] = a[r * D + c] - (r == c ? 1 : 0);
            fixed.add(row);
        }
    }
    out.dim_fixed = D - fixed.rank();
    out.dim_b1 = D - out.dim_fixed;
    const Propagation P = propagate(M, tree, nullptr);
    const FpEliminator E = propagation_equations(M, tree, P, nullptr);
    out.dim_z1 = P.unknowns - E.rank();
    out.dim_fp = out.dim_z1 - out.dim_b1;
    if (out.dim_fp % M.d != 0) throw std::logic_error("dim H^1 over F_p is not divisible by d");
    out.dim_k = out.dim_fp / M.d;
    return out;
}

int h1_via_inflation(const ExtensionGroup& Gamma, const ActionModule& M)
{
    if (M.group != &Gamma) throw std::invalid_argument("module is not over this group");
    const int D = M.D;
    for (int x = 0; x < Gamma.order(); ++x)
        if (!fp_equal(D, M.action(x), M.action(Gamma.element(0, Gamma.g_of(x)))))
            throw ModuleNotInflated("K acts nontrivially on the module (element " + Gamma.describe(x) + ")");

    // Phi: F_p^r -> F_p^D with M(g) Phi = Phi delta(g) for g = tau, sigma; unknown Phi_ij at i r + j.
    const int r = Gamma.rank();
    const GaloisRing F = GaloisRing::prime(M.p, 1);
    const MetacyclicGroup& G = Gamma.base();
    const std::vector<int> gs{G.tau(), G.sigma()};
    GrMatrix A(static_cast<int>(gs.size()) * D * r, D * r);
    int eq = 0;
    for (int g : gs) {
        const std::int32_t* act = M.action(Gamma.element(0, g));
        const IntMat& delta = Gamma.action(g);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < r; ++j, ++eq) {
                std::vector<std::int64_t> coeff(static_cast<std::size_t>(D) * r, 0);
                for (int k = 0; k < D; ++k) coeff[k * r + j] += act[i * D + k];
                for (int k = 0; k < r; ++k) coeff[i * r + k] -= delta[k * r + j];
                for (int c = 0; c < D * r; ++c) A.at(eq, c) = F.from_int(coeff[c]);
            }
    }
    const std::vector<GrElem> zero(static_cast<std::size_t>(A.rows), F.zero());
    const auto sol = solve_linear(F, A, zero);
    if (!sol) throw std::logic_error("homogeneous system reported unsolvable");
    const int dim = howell_log_size(F, howell_form(F, sol->kernel, false));
    if (dim % M.d != 0) throw std::logic_error("dim Hom_G(K/pK, M_0) over F_p is not divisible by d");
    return dim / M.d;
}

bool TwoCocycle::is_zero() const
{
    for (std::int32_t v : values)
        if (v != 0) return false;
    return true;
}

TwoCocycle cocycle_from(const ActionModule& M, const std::function<void(int, int, std::int32_t*)>& f, Exec exec)
{
    const std::int64_t n = M.group->order();
    TwoCocycle o{&M, std::vector<std::int32_t>(static_cast<std::size_t>(n * n * M.D), 0)};
    for_each_index(
        n,
        [&](std::int64_t g) {
            for (std::int64_t h = 0; h < n; ++h)
                f(static_cast<int>(g), static_cast<int>(h), o.values.data() + (g * n + h) * M.D);
        },
        exec);
    return o;
}

TwoCocycle coboundary(const ActionModule& M, const std::vector<std::int32_t>& c, Exec exec)
{
    const FiniteGroup& G = *M.group;
    const int D = M.D;
    if (c.size() != static_cast<std::size_t>(G.order()) * D) throw std::invalid_argument("cochain size");
    return cocycle_from(
        M,
        [&](int g, int h, std::int32_t* out) {
            M.act(g, c.data() + static_cast<std::size_t>(h) * D, out);
            const std::int32_t* cg = c.data() + static_cast<std::size_t>(g) * D;
            const std::int32_t* cgh = c.data() + static_cast<std::size_t>(G.mul(g, h)) * D;
            for (int r = 0; r < D; ++r) out[r] = modp(std::int64_t{out[r]} + cg[r] - cgh[r], M.p);
        },
        exec);
}

CocycleCheck check_cocycle_identity(const TwoCocycle& o, const std::vector<int>& gens, std::int64_t random_triples,
                                    std::uint64_t seed, Exec exec)
{
    const ActionModule& M = *o.module;
    const FiniteGroup& G = *M.group;
    const std::int64_t n = G.order();
    const int D = M.D;
    auto fails = [&](int g, int h, int k) {
        std::vector<std::int32_t> t(static_cast<std::size_t>(D));
        M.act(g, o.at(h, k), t.data());
        const std::int32_t* a = o.at(G.mul(g, h), k);
        const std::int32_t* b = o.at(g, G.mul(h, k));
        const std::int32_t* c = o.at(g, h);
        for (int r = 0; r < D; ++r)
            if (modp(std::int64_t{t[r]} - a[r] + b[r] - c[r], M.p) != 0) return true;
        return false;
    };
    CocycleCheck out;
    if (n <= 300) {
        out.exhaustive = true;
        out.triples = n * n * n;
        const std::int64_t f = first_failure(
            out.triples,
            [&](std::int64_t i) {
                return fails(static_cast<int>(i / (n * n)), static_cast<int>(i / n % n), static_cast<int>(i % n));
            },
            exec);
        if (f < out.triples) {
            out.ok = false;
            out.failure = {static_cast<int>(f / (n * n)), static_cast<int>(f / n % n), static_cast<int>(f % n)};
        }
        return out;
    }
    const std::int64_t ng = static_cast<std::int64_t>(gens.size());
    const std::int64_t fam = n * n * ng;
    std::int64_t f = first_failure(
        fam,
        [&](std::int64_t i) {
            return fails(static_cast<int>(i / (n * ng)), static_cast<int>(i / ng % n), gens[i % ng]);
        },
        exec);
    out.triples = fam;
    if (f < fam) {
        out.ok = false;
        out.failure = {static_cast<int>(f / (n * ng)), static_cast<int>(f / ng % n), gens[f % ng]};
        return out;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::array<int, 3>> triples(static_cast<std::size_t>(random_triples));
    for (auto& t : triples)
        for (int& x : t) x = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    f = first_failure(
        random_triples, [&](std::int64_t i) { return fails(triples[i][0], triples[i][1], triples[i][2]); }, exec);
    out.triples += random_triples;
    if (f < random_triples) {
        out.ok = false;
        out.failure = triples[f];
    }
    return out;
}

CoboundarySolution is_coboundary(const TwoCocycle& o, const std::vector<int>& gens, Exec exec)
{
    const ActionModule& M = *o.module;
    const FiniteGroup& G = *M.group;
    const CayleyTree tree = cayley_tree(G, gens);
    const Propagation P = propagate(M, tree, &o);
    const FpEliminator E = propagation_equations(M, tree, P, &o);
    CoboundarySolution out;
    out.unknowns = P.unknowns;
    out.equations_rank = E.rank();
    if (!E.consistent()) return out;
    out.solvable = true;
    const std::vector<std::int32_t> x = E.particular();
    const int D = M.D, n = G.order();
    out.cochain.assign(static_cast<std::size_t>(n) * D, 0);
    for (int g = 0; g < n; ++g)
        for (int r = 0; r < D; ++r) {
            const std::int32_t* row = P.row(g, r);
            std::int64_t v = row[P.unknowns];
            for (int c = 0; c < P.unknowns; ++c) v += std::int64_t{row[c]} * x[c];
            out.cochain[static_cast<std::size_t>(g) * D + r] = modp(v, M.p);
        }
    const std::int64_t nn = std::int64_t{n} * n;
    const std::int64_t f = first_failure(
        nn,
        [&](std::int64_t i) {
            const int g = static_cast<int>(i / n), h = static_cast<int>(i % n);
            std::vector<std::int32_t> t(static_cast<std::size_t>(D));
            M.act(g, out.cochain.data() + static_cast<std::size_t>(h) * D, t.data());
            const std::int32_t* cg = out.cochain.data() + static_cast<std::size_t>(g) * D;
            const std::int32_t* cgh = out.cochain.data() + static_cast<std::size_t>(G.mul(g, h)) * D;
            const std::int32_t* ogh = o.at(g, h);
            for (int r = 0; r < D; ++r)
                if (modp(std::int64_t{t[r]} + cg[r] - cgh[r] - ogh[r], M.p) != 0) return true;
            return false;
        },
        exec);
    out.validated = f == nn;
    return out;
}

}  // namespace defring
