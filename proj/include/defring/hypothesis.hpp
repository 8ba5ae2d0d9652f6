#pragma once

#include "defring/parallel.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace defring {

struct ParameterTuple {
    int p = 2;
    int n = 1;
    int ell = 3;
    int q = 2;
    std::int64_t u = 2;
    std::int64_t a = 1;

    bool operator==(const ParameterTuple&) const = default;
};

// <u> in (Z/ell)^*, listed u^0, u^1, ...
std::vector<std::int64_t> cyclic_subgroup(std::int64_t u, int ell);

struct ConditionA {
    bool pass = false;
    std::optional<std::int64_t> failing_h;
};

using HPair = std::pair<std::int64_t, std::int64_t>;

struct ConditionB {
    bool pass = false;
    std::vector<HPair> pairs;           // (h2, h3) with h3 - h2 = a
    std::vector<HPair> opposite_pairs;  // (h2, h3) with h2 - h3 = a
};

struct ConditionC {
    bool pass = false;
    int d_a = 0;
    int d_1 = 0;
};

struct HypothesisReport {
    ConditionA cond_a;
    ConditionB cond_b;
    ConditionC cond_c;
    int k_degree = 0;
    bool pass() const { return cond_a.pass && cond_b.pass && cond_c.pass; }
};

ConditionA check_condition_a(const ParameterTuple& t);
ConditionB check_condition_b(const ParameterTuple& t);
// Smallest d >= 1 with Frob^d fixing every value sum_h zeta^{a c h} in Z[zeta_ell].
int residue_degree_of_character(int ell, const std::vector<std::int64_t>& H, std::int64_t a, int p);
ConditionC check_condition_c(const ParameterTuple& t);
// Throws BadAction if u does not have order q mod ell, BadModulus if p | ell or p is not prime.
HypothesisReport check_hypothesis(const ParameterTuple& t);

// All tuples with ell <= max_ell, q <= max_q (ell prime to p), u of order q, a != 0
// passing (a), (b), (c); sorted by (ell, q, u, a).
std::vector<ParameterTuple> search(int p, int n, int max_ell, int max_q, Exec exec = Exec::Parallel);

}  // namespace defring
