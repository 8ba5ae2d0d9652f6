#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defring/cohomology.hpp"
#include "defring/deformation.hpp"
#include "defring/errors.hpp"

#include <random>
#include <set>

using namespace defring;

namespace {

int ilog(std::int64_t x, int p)
{
    int e = 0;
    while (x > 1) {
        x /= p;
        ++e;
    }
    return e;
}

// |Z^1| by enumerating generator values and checking the cocycle law on all pairs.
std::int64_t brute_z1(const ActionModule& M, const std::vector<int>& gens)
{
    const FiniteGroup& G = *M.group;
    const CayleyTree tree = cayley_tree(G, gens);
    const int D = M.D, n = G.order();
    const int bits = D * static_cast<int>(gens.size());
    std::int64_t total = 1;
    for (int i = 0; i < bits; ++i) total *= M.p;
    std::int64_t count = 0;
    std::vector<std::int32_t> c(static_cast<std::size_t>(n) * D), t(D);
    for (std::int64_t code = 0; code < total; ++code) {
        std::vector<std::int32_t> x(bits);
        std::int64_t v = code;
        for (int i = 0; i < bits; ++i) {
            x[i] = static_cast<std::int32_t>(v % M.p);
            v /= M.p;
        }
        std::fill(c.begin(), c.begin() + D, 0);
        for (std::size_t k = 1; k < tree.order.size(); ++k) {
            const int y = tree.order[k], g = tree.parent[y], j = tree.via[y];
            M.act(g, x.data() + j * D, t.data());
            for (int r = 0; r < D; ++r) c[y * D + r] = (c[g * D + r] + t[r]) % M.p;
        }
        bool ok = true;
        for (int g = 0; g < n && ok; ++g)
            for (int h = 0; h < n && ok; ++h) {
                M.act(g, c.data() + h * D, t.data());
                for (int r = 0; r < D; ++r)
                    if ((c[g * D + r] + t[r] - c[G.mul(g, h) * D + r] + 2 * M.p) % M.p != 0) ok = false;
            }
        count += ok;
    }
    return count;
}

// |B^1| as the number of distinct maps g -> g m - m.
std::int64_t brute_b1(const ActionModule& M)
{
    const int D = M.D, n = M.group->order();
    std::int64_t total = 1;
    for (int i = 0; i < D; ++i) total *= M.p;
    std::set<std::vector<std::int32_t>> seen;
    std::vector<std::int32_t> m(D), t(D);
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t v = code;
        for (int i = 0; i < D; ++i) {
            m[i] = static_cast<std::int32_t>(v % M.p);
            v /= M.p;
        }
        std::vector<std::int32_t> c;
        for (int g = 0; g < n; ++g) {
            M.act(g, m.data(), t.data());
            for (int r = 0; r < D; ++r) c.push_back((t[r] - m[r] + M.p) % M.p);
        }
        seen.insert(c);
    }
    return static_cast<std::int64_t>(seen.size());
}

std::vector<std::int32_t> random_cochain(const ActionModule& M, std::mt19937_64& rng)
{
    std::vector<std::int32_t> c(static_cast<std::size_t>(M.group->order()) * M.D);
    for (auto& x : c) x = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(M.p));
    return c;
}

}  // namespace

TEST_CASE("F_p eliminator agrees with exhaustive search")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = trial % 2 ? 3 : 2, vars = 3, eqs = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<std::int64_t>> A(eqs, std::vector<std::int64_t>(vars));
        std::vector<std::int64_t> b(eqs);
        for (int i = 0; i < eqs; ++i) {
            for (auto& x : A[i]) x = static_cast<std::int64_t>(rng() % p);
            b[i] = static_cast<std::int64_t>(rng() % p);
        }
        FpEliminator E(p, vars);
        for (int i = 0; i < eqs; ++i) E.add(A[i], b[i]);
        int solutions = 0;
        for (int code = 0; code < p * p * p; ++code) {
            const std::int64_t y[3] = {code % p, code / p % p, code / (p * p)};
            bool ok = true;
            for (int i = 0; i < eqs; ++i) {
                std::int64_t s = 0;
                for (int j = 0; j < vars; ++j) s += A[i][j] * y[j];
                if ((s - b[i]) % p != 0) ok = false;
            }
            solutions += ok;
        }
        if (!E.consistent()) {
            CHECK(solutions == 0);
            continue;
        }
        int expect = 1;
        for (int i = 0; i < vars - E.rank(); ++i) expect *= p;
        CHECK(solutions == expect);
        const auto y = E.particular();
        for (int i = 0; i < eqs; ++i) {
            std::int64_t s = 0;
            for (int j = 0; j < vars; ++j) s += A[i][j] * y[j];
            CHECK((s - b[i]) % p == 0);
        }
        CHECK(static_cast<int>(E.kernel().size()) == vars - E.rank());
    }
}

TEST_CASE("H^1 of the S4 instance against brute force")
{
    const Instance inst = build_instance({2, 1, 3, 2, 2, 1}, 3);
    const ExtensionGroup& Gamma = *inst.gamma;
    CHECK(Gamma.order() == 24);
    const ActionModule M = adjoint_module(inst);
    CHECK(M.D == 4);
    const auto gens = Gamma.generators();
    const H1Result h = h1_dim(M, gens);
    CHECK(h.dim_k == 1);
    CHECK(h1_via_inflation(Gamma, M) == 1);
    const std::int64_t z1 = brute_z1(M, gens), b1 = brute_b1(M);
    CHECK(ilog(z1, 2) == h.dim_z1);
    CHECK(ilog(b1, 2) == h.dim_b1);
    CHECK(ilog(z1 / b1, 2) == 1);

    // Trivial module: H^1 = Hom(S4, F_2), which has two elements.
    const ActionModule T = module_from_function(Gamma, 2, 1, 1, [](int) { return FpMat{1}; });
    CHECK(h1_dim(T, gens).dim_fp == 1);
    CHECK(ilog(brute_z1(T, gens), 2) == 1);
    CHECK(h1_via_inflation(Gamma, T) == 0);
}

TEST_CASE("H^1 of the 144-element instance and its multiplicity-two variant")
{
    const Instance inst = build_instance({3, 1, 8, 2, 3, 2}, 3);
    const ExtensionGroup& Gamma = *inst.gamma;
    CHECK(Gamma.order() == 144);
    const ActionModule M = adjoint_module(inst);
    const H1Result h = h1_dim(M, Gamma.generators());
    CHECK(h.dim_k == 1);
    CHECK(h1_via_inflation(Gamma, M) == 1);
    const ActionModule T = module_from_function(Gamma, 3, 1, 1, [](int) { return FpMat{1}; });
    CHECK(h1_dim(T, Gamma.generators()).dim_fp == 0);

    // K = (Z/3)^2 permuted by sigma with tau trivial: the a = 0 module, which fails (b) with
    // multiplicity 2.
    const ExtensionGroup Gamma0(inst.G, 3, 1, 2, {1, 0, 0, 1}, {0, 1, 1, 0});
    std::vector<FpMat> mats;
    for (int g = 0; g < inst.G->order(); ++g) mats.push_back(M.action_matrix(Gamma.element(0, g)));
    const ActionModule M0 =
        module_from_function(Gamma0, 3, 1, 4, [&](int x) { return mats[Gamma0.g_of(x)]; });
    CHECK(h1_via_inflation(Gamma0, M0) == 2);
    CHECK(h1_dim(M0, Gamma0.generators()).dim_k == 2);
}

TEST_CASE("a module on which K acts is rejected by the inflation method")
{
    const auto G = std::make_shared<const MetacyclicGroup>(3, 2, 2);
    const ExtensionGroup Gamma(G, 2, 1, 1, {1}, {1});
    const ActionModule M = module_from_function(Gamma, 2, 1, 2, [&](int x) {
        return FpMat{1, static_cast<std::int32_t>(Gamma.vcode_of(x)), 0, 1};
    });
    CHECK_THROWS_AS(h1_via_inflation(Gamma, M), ModuleNotInflated);
    const H1Result h = h1_dim(M, Gamma.generators());
    CHECK(ilog(brute_z1(M, Gamma.generators()) / brute_b1(M), 2) == h.dim_fp);
    CHECK_THROWS_AS(module_from_function(Gamma, 2, 1, 1, [&](int x) { return FpMat{x == 0 ? 1 : 0}; }),
                    HomomorphismFailure);
    CHECK_THROWS_AS(h1_dim(M, {Gamma.generators()[0]}), NotGenerating);
}

TEST_CASE("coboundaries are recognised and witnesses validate")
{
    std::mt19937_64 rng(17);
    const Instance s4 = build_instance({2, 1, 3, 2, 2, 1}, 3);
    const ActionModule M = adjoint_module(s4);
    const auto gens = s4.gamma->generators();
    const TwoCocycle zero = coboundary(M, std::vector<std::int32_t>(24 * 4, 0));
    CHECK(zero.is_zero());
    const auto z = is_coboundary(zero, gens);
    CHECK(z.solvable);
    CHECK(z.validated);
    for (int trial = 0; trial < 100; ++trial) {
        const TwoCocycle o = coboundary(M, random_cochain(M, rng));
        CHECK(check_cocycle_identity(o, gens).ok);
        const auto sol = is_coboundary(o, gens, trial % 2 ? Exec::Serial : Exec::Parallel);
        CHECK(sol.solvable);
        CHECK(sol.validated);
    }
    // A single corrupted value breaks the identity.
    TwoCocycle bad = coboundary(M, random_cochain(M, rng));
    bad.values[(5 * 24 + 7) * 4] ^= 1;
    const auto chk = check_cocycle_identity(bad, gens);
    CHECK_FALSE(chk.ok);
    CHECK(chk.exhaustive);

    const Instance g144 = build_instance({3, 1, 8, 2, 3, 2}, 3);
    const ActionModule M144 = adjoint_module(g144);
    for (int trial = 0; trial < 5; ++trial) {
        const TwoCocycle o = coboundary(M144, random_cochain(M144, rng));
        const auto sol = is_coboundary(o, g144.gamma->generators());
        CHECK(sol.solvable);
        CHECK(sol.validated);
    }
}

TEST_CASE("generator-restricted cocycle check on a larger group")
{
    std::mt19937_64 rng(3);
    const Instance inst = build_instance({3, 1, 8, 2, 3, 2}, 3);
    // 144 <= 300 is exhaustive; the n = 2 group (1296 elements) is not.
    const Instance big = build_instance({3, 2, 8, 2, 3, 2}, 4);
    const ActionModule M = adjoint_module(big);
    const TwoCocycle o = coboundary(M, random_cochain(M, rng));
    const auto chk = check_cocycle_identity(o, big.gamma->generators(), 20000);
    CHECK(chk.ok);
    CHECK_FALSE(chk.exhaustive);
    const ActionModule M1 = adjoint_module(inst);
    CHECK(check_cocycle_identity(coboundary(M1, random_cochain(M1, rng)), inst.gamma->generators()).exhaustive);
}
