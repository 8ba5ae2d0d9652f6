// Serial vs OpenMP timings of the exhaustive kernels on one instance.
#include "defring/deformation.hpp"
#include "defring/hypothesis.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace defring;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& name, const std::function<void(Exec)>& kernel, int reps)
{
    const double s = seconds([&] { kernel(Exec::Serial); }, reps);
    const double p = seconds([&] { kernel(Exec::Parallel); }, reps);
    std::printf("%-28s %10.4f %10.4f %8.2fx\n", name.c_str(), s, p, p > 0 ? s / p : 0.0);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"serial vs parallel kernel timings"};
    ParameterTuple t{3, 1, 8, 2, 3, 2};
    int reps = 3;
    app.add_option("--p", t.p);
    app.add_option("--n", t.n);
    app.add_option("--ell", t.ell);
    app.add_option("--q", t.q);
    app.add_option("--u", t.u);
    app.add_option("--a", t.a);
    app.add_option("--reps", reps, "best of this many runs");
    CLI11_PARSE(app, argc, argv);

    const int m = t.n + 2;
    const Instance inst = build_instance(t, m);
    const TestRing R = TestRing::r_model(t.p, t.n, m, inst.d);
    const LiftRecord rho = construct_rho_R(inst, R);
    const ActionModule M = adjoint_module(inst);
    const auto gens = inst.gamma->generators();
    const TestRing C = enumerate_small_extensions(t.p, t.n, m, inst.d).front();
    std::vector<TMat> hat(rho.images.size());
    for (std::size_t x = 0; x < hat.size(); ++x) {
        hat[x] = TMat(t.q, t.q);
        for (std::size_t i = 0; i < hat[x].a.size(); ++i) hat[x].a[i] = C.from_r(rho.images[x].a[i], R);
    }
    const TwoCocycle o = obstruction_cocycle(M, C, hat);

    std::printf("instance p=%d n=%d ell=%d q=%d u=%lld a=%lld  |Gamma|=%d  threads=%d\n", t.p, t.n, t.ell, t.q,
                static_cast<long long>(t.u), static_cast<long long>(t.a), inst.gamma->order(), omp_get_max_threads());
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");
    row("rho_R homomorphism check", [&](Exec e) { construct_rho_R(inst, R, false, e); }, reps);
    row("adjoint module", [&](Exec e) { adjoint_module(inst, e); }, reps);
    row("obstruction cocycle", [&](Exec e) { obstruction_cocycle(M, C, hat, e); }, reps);
    row("cocycle identity", [&](Exec e) { check_cocycle_identity(o, gens, 100000, 1, e); }, reps);
    row("coboundary test", [&](Exec e) { is_coboundary(o, gens, e); }, reps);
    row("search ell<=40, q<=12", [&](Exec e) { search(t.p, t.n, 40, 12, e); }, reps);
    if (inst.gamma->order() <= 200) {
        std::vector<GrMatrix> bar;
        for (int x = 0; x < inst.gamma->order(); ++x) bar.push_back(inst.rho_bar.images[inst.gamma->g_of(x)]);
        const TestRing D = TestRing::dual_numbers(t.p, inst.d);
        row("brute force over k[eps]", [&](Exec e) { brute_force_def_count(*inst.gamma, bar, *inst.k, D, 1 << 22, e); },
            reps);
    }
    return 0;
}
