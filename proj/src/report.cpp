#include "defring/report.hpp"

#include "defring/deformation.hpp"
#include "defring/errors.hpp"

namespace defring {

namespace {

std::string describe_hypothesis_failure(const HypothesisReport& h)
{
    std::string s;
    if (!h.cond_a.pass) s += "condition (a) fails at h = " + std::to_string(h.cond_a.failing_h.value_or(-1)) + "; ";
    if (!h.cond_b.pass)
        s += "condition (b) has " + std::to_string(h.cond_b.pairs.size()) + " pairs instead of 1; ";
    if (!h.cond_c.pass)
        s += "condition (c): d_a = " + std::to_string(h.cond_c.d_a) + " but d_1 = " + std::to_string(h.cond_c.d_1) +
             "; ";
    if (!s.empty()) s.resize(s.size() - 2);
    return s;
}

void evaluate(VerificationReport& r)
{
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) r.failures.push_back(what);
    };
    need(r.group_ok, "group checks failed");
    need(r.descents_verified, "a descended representation failed verification");
    need(r.rho_w_reduces_to_v_hat, "rho_W does not reduce to V-hat");
    need(r.hom_free_rank_one, "Hom_G(V', M) is not free of rank one over A");
    need(r.psi_injective, "psi is not injective");
    need(r.multiplicity == 1, "multiplicity is " + std::to_string(r.multiplicity) + ", not 1");
    need(r.witness_found, "no commutator witness");
    if (r.explicit_witness_agrees) need(*r.explicit_witness_agrees, "the explicit witness does not check out");
    need(r.lift_verified, "rho_R failed verification");
    need(r.h1_inflation == 1, "H^1 via inflation is not 1");
    if (r.h1_bruteforce) need(*r.h1_bruteforce == 1, "H^1 by generator propagation is not 1");
    for (const auto& o : r.obstructions) {
        need(o.cocycle_identity, o.ring + ": cocycle identity fails");
        need(o.obstructed, o.ring + ": a lift exists");
    }
    if (r.bruteforce_def)
        for (const auto& b : *r.bruteforce_def)
            if (!b.too_large) need(b.classes == b.hom_count, b.ring + ": deformation count differs from Hom count");
    r.overall = r.failures.empty();
}

}  // namespace

VerificationReport verify_instance(const ParameterTuple& t, const VerifyOptions& opts)
{
    VerificationReport r;
    r.tuple = t;
    r.m = opts.m ? opts.m : t.n + 2;
    if (r.m < t.n + 2) throw PrecisionTooLow("precision must be at least n + 2");
    r.hypothesis = check_hypothesis(t);
    r.d = r.hypothesis.k_degree;
    if (!r.hypothesis.pass()) {
        r.failures.push_back("hypothesis: " + describe_hypothesis_failure(r.hypothesis));
        return r;
    }
    std::string stage = "construction";
    try {
        const Instance inst = build_instance(t, r.m);
        const ExtensionGroup& Gamma = *inst.gamma;
        r.order_G = inst.G->order();
        r.order_K = Gamma.kernel_order();
        r.order_Gamma = Gamma.order();

        stage = "groups";
        const GroupReport gr = group_checks(Gamma);
        r.element_orders = gr.element_orders;
        r.center = gr.center_size;
        const ProjectionReport pr = check_projection(Gamma);
        r.group_ok = gr.ok() && pr.homomorphism && pr.surjective && pr.kernel_size == Gamma.kernel_order();

        stage = "representations";
        r.descents_verified = inst.v_prime.verified() && inst.v_hat.verified() && inst.rho_w.verified();
        r.rho_w_reduces_to_v_hat = inst.rho_w_reduces_to_v_hat;
        r.hom_log_size = inst.hom.log_size;
        r.hom_invariant_factors = inst.hom.invariant_factors;
        r.hom_free_rank_one = inst.hom.free_rank_one && inst.hom.a_stable;
        r.psi_injective = psi_injective(*inst.Z, inst.psi);
        const Multiplicity mult = multiplicity_by_character(*inst.G, t.a);
        r.multiplicity = mult.mult;
        r.s_count = static_cast<std::int64_t>(mult.S.size());

        stage = "witness";
        const CommutatorWitness w = commutator_witness(*inst.A, inst.psi, t.q);
        r.witness_found = w.found;
        r.witness_pairs_checked = w.pairs_checked;
        try {
            const ExplicitWitness pw = explicit_witness(*inst.G, t.a, t.p);
            r.explicit_witness_agrees = pw.equivariant && pw.noncommuting && w.found;
        } catch (const NoRootOfUnity&) {
            r.explicit_witness_agrees.reset();
        }

        stage = "lift";
        const TestRing R = TestRing::r_model(t.p, t.n, r.m, r.d);
        const LiftRecord rho = construct_rho_R(inst, R, false, opts.exec);
        r.lift_verified = rho.verified();
        r.lift_pairs_checked = std::int64_t{Gamma.order()} * Gamma.order();

        stage = "cohomology";
        const ActionModule M = adjoint_module(inst, opts.exec);
        r.h1_inflation = h1_via_inflation(Gamma, M);
        if (opts.skip_h1_bruteforce)
            r.h1_bruteforce_skipped = true;
        else
            r.h1_bruteforce = h1_dim(M, Gamma.generators()).dim_k;

        stage = "obstructions";
        for (const TestRing& C : enumerate_small_extensions(t.p, t.n, r.m, r.d)) {
            const Unliftability u = test_unliftability(rho, C, M, Gamma.generators(), opts.exec);
            r.obstructions.push_back({u.ring, u.obstructed, u.cocycle_identity, u.cocycle_exhaustive,
                                      u.triples_checked, u.equations_rank, u.unknowns, u.lift_verified});
        }

        if (opts.bruteforce) {
            stage = "brute force";
            std::vector<GrMatrix> bar;
            for (int x = 0; x < Gamma.order(); ++x) bar.push_back(inst.rho_bar.images[Gamma.g_of(x)]);
            std::vector<BruteForceVerdict> out;
            for (const TestRing& A :
                 {TestRing::witt(t.p, 1, r.d), TestRing::dual_numbers(t.p, r.d), TestRing::witt(t.p, 2, r.d)}) {
                BruteForceVerdict v;
                v.ring = A.name();
                v.hom_count = hom_count_R_to_A(t.n, A);
                try {
                    const BruteForceCount b = brute_force_def_count(Gamma, bar, *inst.k, A, 1 << 22, opts.exec);
                    v.classes = b.classes;
                    v.lifts = b.lifts;
                } catch (const TooLarge&) {
                    v.too_large = true;
                }
                out.push_back(v);
            }
            r.bruteforce_def = std::move(out);
        }
    } catch (const Error& e) {
        r.failures.push_back(stage + ": " + e.what());
        return r;
    }
    evaluate(r);
    return r;
}

nlohmann::ordered_json report_to_json(const VerificationReport& r)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["parameters"] = {{"p", r.tuple.p}, {"n", r.tuple.n}, {"ell", r.tuple.ell}, {"q", r.tuple.q},
                       {"u", r.tuple.u}, {"a", r.tuple.a}, {"m", r.m},         {"d", r.d}};
    ordered_json pairs = ordered_json::array(), opposite = ordered_json::array();
    for (const auto& [h2, h3] : r.hypothesis.cond_b.pairs) pairs.push_back({h2, h3});
    for (const auto& [h2, h3] : r.hypothesis.cond_b.opposite_pairs) opposite.push_back({h2, h3});
    j["hypothesis"] = {
        {"pass", r.hypothesis.pass()},
        {"condition_a",
         {{"pass", r.hypothesis.cond_a.pass},
          {"failing_h", r.hypothesis.cond_a.failing_h ? ordered_json(*r.hypothesis.cond_a.failing_h) : ordered_json()}}},
        {"condition_b", {{"pass", r.hypothesis.cond_b.pass}, {"pairs", pairs}, {"opposite_pairs", opposite}}},
        {"condition_c",
         {{"pass", r.hypothesis.cond_c.pass}, {"d_a", r.hypothesis.cond_c.d_a}, {"d_1", r.hypothesis.cond_c.d_1}}}};
    j["group_orders"] = {{"G", r.order_G}, {"K", r.order_K}, {"Gamma", r.order_Gamma}};
    ordered_json orders = ordered_json::object();
    for (const auto& [ord, count] : r.element_orders) orders[std::to_string(ord)] = count;
    j["groups"] = {{"checks_pass", r.group_ok}, {"element_orders", orders}, {"center", r.center}};
    j["representations"] = {{"descents_verified", r.descents_verified},
                            {"rho_w_reduces_to_v_hat", r.rho_w_reduces_to_v_hat},
                            {"hom_log_size", r.hom_log_size},
                            {"hom_invariant_factors", r.hom_invariant_factors},
                            {"hom_free_rank_one", r.hom_free_rank_one},
                            {"psi_injective", r.psi_injective}};
    j["h1"] = {{"inflation", r.h1_inflation ? ordered_json(*r.h1_inflation) : ordered_json()},
               {"bruteforce", r.h1_bruteforce_skipped ? ordered_json("skipped")
                              : r.h1_bruteforce       ? ordered_json(*r.h1_bruteforce)
                                                      : ordered_json()}};
    j["multiplicity"] = {{"mult", r.multiplicity}, {"S_count", r.s_count}};
    j["witness"] = {{"found", r.witness_found},
                    {"pairs_checked", r.witness_pairs_checked},
                    {"explicit_witness_agrees",
                     r.explicit_witness_agrees ? ordered_json(*r.explicit_witness_agrees) : ordered_json()}};
    j["lift"] = {{"homomorphism_verified", r.lift_verified}, {"pairs_checked", r.lift_pairs_checked}};
    ordered_json obs = ordered_json::array();
    for (const auto& o : r.obstructions)
        obs.push_back({{"ring", o.ring},
                       {"verdict", o.obstructed ? "Obstructed" : (o.cocycle_identity ? "LiftFound" : "Invalid")},
                       {"cocycle_identity", o.cocycle_identity},
                       {"cocycle_identity_exhaustive", o.cocycle_exhaustive},
                       {"triples_checked", o.triples_checked},
                       {"equations_rank", o.equations_rank},
                       {"unknowns", o.unknowns},
                       {"lift_verified", o.lift_verified}});
    j["obstructions"] = obs;
    if (r.bruteforce_def) {
        ordered_json bf = ordered_json::array();
        for (const auto& b : *r.bruteforce_def)
            bf.push_back({{"ring", b.ring},
                          {"too_large", b.too_large},
                          {"classes", b.classes},
                          {"lifts", b.lifts},
                          {"hom_count", b.hom_count}});
        j["bruteforce_def"] = bf;
    } else {
        j["bruteforce_def"] = nullptr;
    }
    j["certificates"] = {
        {"obstruction", "non-liftability over C/p^m C, which implies non-liftability over C"},
        {"lift", "rho_R checked as a homomorphism on every pair at precision m"}};
    j["failures"] = r.failures;
    j["overall"] = r.overall ? "pass" : "fail";
    return j;
}

nlohmann::ordered_json tuples_to_json(const std::vector<ParameterTuple>& tuples, int p, int n, int max_ell, int max_q)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["search"] = {{"p", p}, {"n", n}, {"max_ell", max_ell}, {"max_q", max_q}};
    ordered_json rows = ordered_json::array();
    for (const auto& t : tuples) rows.push_back({{"ell", t.ell}, {"q", t.q}, {"u", t.u}, {"a", t.a}});
    j["tuples"] = rows;
    return j;
}

}  // namespace defring
