#include "defring/hypothesis.hpp"

#include "defring/cyclotomic.hpp"
#include "defring/errors.hpp"
#include "defring/galois_ring.hpp"
#include "defring/groups.hpp"

namespace defring {

namespace {

std::int64_t md(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

void validate(const ParameterTuple& t)
{
    if (!is_prime(t.p)) throw BadModulus("p must be prime");
    if (t.n < 1) throw BadModulus("n must be positive");
    if (t.ell < 2 || t.q < 2) throw BadAction("need ell > 1 and q > 1");
    if (gcd64(t.p, t.ell) != 1) throw BadModulus("p must be prime to ell");
    if (multiplicative_order(t.u, t.ell) != t.q) throw BadAction("u must have multiplicative order q mod ell");
}

}  // namespace

std::vector<std::int64_t> cyclic_subgroup(std::int64_t u, int ell)
{
    std::vector<std::int64_t> H{1 % ell};
    u = md(u, ell);
    for (std::int64_t x = u; x != 1 % ell && static_cast<int>(H.size()) <= ell; x = x * u % ell) H.push_back(x);
    return H;
}

ConditionA check_condition_a(const ParameterTuple& t)
{
    ConditionA out;
    out.pass = true;
    for (std::int64_t h : cyclic_subgroup(t.u, t.ell)) {
        if (h == 1) continue;
        if (md((h - 1) * t.a, t.ell) == 0) {
            out.pass = false;
            out.failing_h = h;
            break;
        }
    }
    return out;
}

ConditionB check_condition_b(const ParameterTuple& t)
{
    ConditionB out;
    const auto H = cyclic_subgroup(t.u, t.ell);
    for (std::int64_t h2 : H)
        for (std::int64_t h3 : H) {
            if (md(h3 - h2 - t.a, t.ell) == 0) out.pairs.emplace_back(h2, h3);
            if (md(h2 - h3 - t.a, t.ell) == 0) out.opposite_pairs.emplace_back(h2, h3);
        }
    out.pass = out.pairs.size() == 1;
    return out;
}

int residue_degree_of_character(int ell, const std::vector<std::int64_t>& H, std::int64_t a, int p)
{
    if (gcd64(p, ell) != 1) throw BadModulus("p must be prime to ell");
    std::vector<CyclotomicSum> values;
    for (int c = 0; c < ell; ++c) {
        std::vector<std::int64_t> exps;
        for (std::int64_t h : H) exps.push_back(md(a * c * h, ell));
        values.push_back(cyc_sum(ell, exps));
    }
    const std::int64_t ord = multiplicative_order(p, ell);
    std::int64_t pd = 1;
    for (int d = 1; d <= ord; ++d) {
        pd = pd * p % ell;
        bool fixed = true;
        for (const auto& v : values)
            if (!cyc_equal_in_zeta(cyc_frobenius(v, pd), v)) {
                fixed = false;
                break;
            }
        if (fixed) return d;
    }
    throw std::logic_error("Frobenius of order ord_ell(p) must fix all values");
}

ConditionC check_condition_c(const ParameterTuple& t)
{
    const auto H = cyclic_subgroup(t.u, t.ell);
    ConditionC out;
    out.d_a = residue_degree_of_character(t.ell, H, t.a, t.p);
    out.d_1 = residue_degree_of_character(t.ell, H, 1, t.p);
    out.pass = out.d_a == out.d_1;
    return out;
}

HypothesisReport check_hypothesis(const ParameterTuple& t)
{
    validate(t);
    HypothesisReport rep;
    rep.cond_a = check_condition_a(t);
    rep.cond_b = check_condition_b(t);
    rep.cond_c = check_condition_c(t);
    rep.k_degree = rep.cond_c.d_1;
    return rep;
}

std::vector<ParameterTuple> search(int p, int n, int max_ell, int max_q, Exec exec)
{
    if (!is_prime(p)) throw BadModulus("p must be prime");
    std::vector<ParameterTuple> groups;
    for (int ell = 2; ell <= max_ell; ++ell) {
        if (gcd64(p, ell) != 1) continue;
        for (int q = 2; q <= max_q; ++q) {
            for (std::int64_t u = 1; u < ell; ++u)
                if (multiplicative_order(u, ell) == q) groups.push_back({p, n, ell, q, u, 0});
        }
    }
    std::vector<std::vector<ParameterTuple>> found(groups.size());
    for_each_index(
        static_cast<std::int64_t>(groups.size()),
        [&](std::int64_t i) {
            ParameterTuple t = groups[i];
            for (std::int64_t a = 1; a < t.ell; ++a) {
                t.a = a;
                if (check_hypothesis(t).pass()) found[i].push_back(t);
            }
        },
        exec);
    std::vector<ParameterTuple> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    return out;
}

}  // namespace defring
