#include "defring/errors.hpp"
#include "defring/galois_ring.hpp"
#include "defring/hypothesis.hpp"
#include "defring/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace defring;
using nlohmann::ordered_json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

bool write_json(const ordered_json& j, const std::string& path)
{
    if (path.empty()) return true;
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return false;
    }
    out << j.dump(2) << "\n";
    return static_cast<bool>(out);
}

int run_search(int p, int n, int max_ell, int max_q, const std::string& json_path)
{
    if (!is_prime(p)) {
        std::cerr << "p = " << p << " is not prime\n";
        return kUsage;
    }
    if (n < 1 || max_ell < 2 || max_q < 2) {
        std::cerr << "need n >= 1 and bounds >= 2\n";
        return kUsage;
    }
    const auto tuples = search(p, n, max_ell, max_q);
    std::printf("%5s %5s %5s %5s\n", "ell", "q", "u", "a");
    for (const auto& t : tuples) std::printf("%5d %5d %5lld %5lld\n", t.ell, t.q, (long long)t.u, (long long)t.a);
    std::printf("%zu tuple(s)\n", tuples.size());
    if (!write_json(tuples_to_json(tuples, p, n, max_ell, max_q), json_path)) return kUsage;
    return tuples.empty() ? kFail : kPass;
}

void print_summary(const VerificationReport& r)
{
    std::printf("p=%d n=%d ell=%d q=%d u=%lld a=%lld m=%d d=%d\n", r.tuple.p, r.tuple.n, r.tuple.ell, r.tuple.q,
                (long long)r.tuple.u, (long long)r.tuple.a, r.m, r.d);
    std::printf("hypothesis: %s\n", r.hypothesis.pass() ? "pass" : "fail");
    if (r.order_Gamma) std::printf("|G| = %d, |K| = %d, |Gamma| = %d\n", r.order_G, r.order_K, r.order_Gamma);
    if (r.h1_inflation) {
        std::printf("H^1: inflation %d, generator propagation ", *r.h1_inflation);
        if (r.h1_bruteforce)
            std::printf("%d\n", *r.h1_bruteforce);
        else
            std::printf("skipped\n");
    }
    if (r.multiplicity >= 0) std::printf("multiplicity %lld (#S = %lld)\n", (long long)r.multiplicity, (long long)r.s_count);
    if (r.order_Gamma) std::printf("lift verified: %s\n", r.lift_verified ? "yes" : "no");
    for (const auto& o : r.obstructions) std::printf("  %-40s %s\n", o.ring.c_str(), o.obstructed ? "Obstructed" : "LIFT FOUND");
    if (r.bruteforce_def)
        for (const auto& b : *r.bruteforce_def) {
            if (b.too_large)
                std::printf("  brute force %-28s too large\n", b.ring.c_str());
            else
                std::printf("  brute force %-28s %lld classes, Hom count %lld\n", b.ring.c_str(), (long long)b.classes,
                            (long long)b.hom_count);
        }
    for (const auto& f : r.failures) std::printf("FAILED: %s\n", f.c_str());
    std::printf("overall: %s\n", r.overall ? "PASS" : "FAIL");
}

int run_verify(const ParameterTuple& t, int m, bool brute, bool skip_h1, const std::string& json_path)
{
    VerifyOptions opts;
    opts.m = m;
    opts.bruteforce = brute;
    opts.skip_h1_bruteforce = skip_h1;
    VerificationReport r;
    try {
        r = verify_instance(t, opts);
    } catch (const BadModulus& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const BadAction& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const PrecisionTooLow& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    }
    print_summary(r);
    if (!write_json(report_to_json(r), json_path)) return kUsage;
    return r.overall ? kPass : kFail;
}

int run_table(const std::vector<std::string>& paths)
{
    std::vector<ordered_json> reports;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "cannot read " << path << "\n";
            return kUsage;
        }
        try {
            ordered_json j = ordered_json::parse(in);
            if (!j.contains("schema_version") || !j.contains("parameters") || !j.contains("overall"))
                throw std::runtime_error("not a verification report");
            reports.push_back(std::move(j));
        } catch (const std::exception& e) {
            std::cerr << path << ": " << e.what() << "\n";
            return kUsage;
        }
    }
    std::printf("%3s %3s %4s %3s %4s %4s %3s %3s %4s %10s %7s\n", "p", "n", "ell", "q", "u", "a", "m", "d", "H1",
                "obstructed", "verdict");
    for (const auto& j : reports) {
        try {
            const auto& par = j.at("parameters");
            int obstructed = 0, total = 0;
            for (const auto& o : j.at("obstructions")) {
                ++total;
                obstructed += o.at("verdict") == "Obstructed";
            }
            const auto& h1 = j.at("h1").at("inflation");
            std::printf("%3d %3d %4d %3d %4lld %4lld %3d %3d %4s %6d/%-3d %7s\n", par.at("p").get<int>(),
                        par.at("n").get<int>(), par.at("ell").get<int>(), par.at("q").get<int>(),
                        par.at("u").get<long long>(), par.at("a").get<long long>(), par.at("m").get<int>(),
                        par.at("d").get<int>(), h1.is_null() ? "-" : std::to_string(h1.get<int>()).c_str(), obstructed,
                        total, j.at("overall") == "pass" ? "PASS" : "FAIL");
        } catch (const std::exception& e) {
            std::cerr << "malformed report: " << e.what() << "\n";
            return kUsage;
        }
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-precision certificates for deformation rings of K x| (Z/ell x| Z/q) representations"};
    app.require_subcommand(1);

    int p = 0, n = 1, max_ell = 20, max_q = 8, ell = 0, q = 0, m = 0;
    long long u = 0, a = 0;
    bool brute = false, skip_h1 = false;
    std::string json_path;
    std::vector<std::string> inputs;

    auto* s = app.add_subcommand("search", "list parameter tuples passing the hypothesis");
    s->add_option("--p", p, "prime")->required();
    s->add_option("--n", n, "exponent of p in K");
    s->add_option("--max-ell", max_ell, "largest ell");
    s->add_option("--max-q", max_q, "largest q");
    s->add_option("--json,--output", json_path, "write the tuple list as JSON");

    auto* v = app.add_subcommand("verify", "run the full verification pipeline for one tuple");
    v->add_option("--p", p, "prime")->required();
    v->add_option("--n", n, "exponent of p in K");
    v->add_option("--ell", ell)->required();
    v->add_option("--q", q)->required();
    v->add_option("--u", u)->required();
    v->add_option("--a", a)->required();
    v->add_option("--precision", m, "W-precision m (default n + 2)");
    v->add_flag("--bruteforce", brute, "count deformations over small rings by enumeration");
    v->add_flag("--skip-h1-bruteforce", skip_h1, "skip the generator-propagation H^1 computation");
    v->add_option("--json,--output", json_path, "write the report as JSON");

    auto* t = app.add_subcommand("table", "summarize verification reports");
    t->add_option("reports", inputs, "report files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kPass;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return kPass;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (s->parsed()) return run_search(p, n, max_ell, max_q, json_path);
    if (v->parsed()) {
        if (!is_prime(p) || n < 1) {
            std::cerr << "invalid input: need prime p and n >= 1\n";
            return kUsage;
        }
        return run_verify({p, n, ell, q, u, a}, m, brute, skip_h1, json_path);
    }
    return run_table(inputs);
}
