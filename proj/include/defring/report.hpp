#pragma once

#include "defring/hypothesis.hpp"
#include "defring/parallel.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace defring {

inline constexpr int kSchemaVersion = 1;

struct VerifyOptions {
    int m = 0;  // 0 means n + 2
    bool bruteforce = false;
    bool skip_h1_bruteforce = false;
    Exec exec = Exec::Parallel;
};

struct ObstructionVerdict {
    std::string ring;
    bool obstructed = false;
    bool cocycle_identity = false;
    bool cocycle_exhaustive = false;
    std::int64_t triples_checked = 0;
    int equations_rank = 0;
    int unknowns = 0;
    bool lift_verified = false;
};

struct BruteForceVerdict {
    std::string ring;
    bool too_large = false;
    std::int64_t classes = 0;
    std::int64_t lifts = 0;
    std::int64_t hom_count = 0;
};

struct VerificationReport {
    ParameterTuple tuple;
    int m = 0;
    int d = 0;
    HypothesisReport hypothesis;
    int order_G = 0, order_K = 0, order_Gamma = 0;
    std::map<int, int> element_orders;
    int center = 0;
    bool group_ok = false;
    bool descents_verified = false;
    bool rho_w_reduces_to_v_hat = false;
    int hom_log_size = 0;
    std::vector<int> hom_invariant_factors;
    bool hom_free_rank_one = false;
    bool psi_injective = false;
    std::optional<int> h1_inflation;
    std::optional<int> h1_bruteforce;  // generator propagation; empty when skipped
    bool h1_bruteforce_skipped = false;
    std::int64_t multiplicity = -1;
    std::int64_t s_count = -1;
    bool witness_found = false;
    std::int64_t witness_pairs_checked = 0;
    std::optional<bool> explicit_witness_agrees;
    bool lift_verified = false;
    std::int64_t lift_pairs_checked = 0;
    std::vector<ObstructionVerdict> obstructions;
    std::optional<std::vector<BruteForceVerdict>> bruteforce_def;
    std::vector<std::string> failures;
    bool overall = false;
};

// Full pipeline.  Never throws for mathematical failures; they are recorded in
// `failures`.  Throws BadModulus / BadAction / PrecisionTooLow for malformed input.
VerificationReport verify_instance(const ParameterTuple& t, const VerifyOptions& opts);

nlohmann::ordered_json report_to_json(const VerificationReport& r);
nlohmann::ordered_json tuples_to_json(const std::vector<ParameterTuple>& tuples, int p, int n, int max_ell, int max_q);

}  // namespace defring
