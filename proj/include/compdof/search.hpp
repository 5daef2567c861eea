#pragma once

// Search over message assignments for the largest subset bound (eta_out),
// finite-K expansion-ratio experiments on concrete assignments, and the
// entropy threshold for the union-of-random-matchings construction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compdof/assignment.hpp"
#include "compdof/error.hpp"
#include "compdof/expansion.hpp"

namespace compdof {

struct Rational {
    long long num = 0;
    long long den = 1;

    bool operator==(const Rational&) const = default;
};

enum class SearchMethod { Exhaustive, Random };

struct SearchReport {
    int k = 0;
    int m = 0;
    int best_value = 0;
    MessageAssignment best_assignment;
    SearchMethod method = SearchMethod::Exhaustive;
    std::uint64_t trials_or_count = 0;
    std::uint64_t seed = 0;        // random method only
    double elapsed_seconds = 0.0;  // informational; excluded from determinism
    std::uint64_t dedup_hits = 0;  // exhaustive method only
};

struct SearchBudget {
    std::uint64_t max_assignments = 2'000'000;
    bool dedup = true;  // canonical-form dedup, auto-disabled above dedup_cap
    int dedup_cap = 6;
    ExpansionCaps caps;
};

// Exhaustive enumeration over the budget raised this; carries the best
// result over the evaluated prefix (absent when nothing was evaluated).
class SearchBudgetError : public Error {
public:
    SearchBudgetError(const std::string& msg, std::optional<SearchReport> partial_report)
        : Error(ErrorKind::Budget, msg), partial(std::move(partial_report)) {}

    std::optional<SearchReport> partial;
};

// Exact eta_out(k, m): enumerates every assignment of nonempty transmit
// sets of size <= m, optionally deduplicated by canonical form (which never
// changes the value, B being a label invariant). Reports the first
// maximizer in enumeration order.
SearchReport eta_out_exact(int k, int m, const SearchBudget& budget = {});

// Max of exact B over seeded trials; trial t regenerates in isolation from
// substream_seed(seed, t). generator must be MatchingUnion or UniformRandom.
SearchReport eta_out_random(int k, int m, int trials, std::uint64_t seed,
                            GeneratorKind generator,
                            const ExpansionCaps& caps = {});

struct AlphaRatio {
    Rational alpha;
    int i = 0;    // round(alpha * k)
    int e_i = 0;  // exact e(i)
    double ratio = 0.0;
};

// e(round(alpha*K)) / round(alpha*K) per alpha, exact profile; every
// rounded cardinality must land in [1, floor(K/2)].
std::vector<AlphaRatio> expansion_ratio(const MessageAssignment& assignment,
                                        const std::vector<Rational>& alphas,
                                        const ExpansionCaps& caps = {});

// 2 H(eps) / (-eps log2(1-eps)), H the binary entropy in bits. The minimal
// admissible integer cooperation order is floor(result) + 1.
double epsilon_threshold(const Rational& epsilon);
int minimal_cooperation_order(const Rational& epsilon);

struct ExpansionExperiment {
    int k = 0;
    int m = 0;
    Rational epsilon;
    int trials = 0;
    std::uint64_t seed = 0;
    int successes = 0;
    // exact e(eps*k) per trial from full subset enumeration, and the ratio
    // e(eps*k) / (eps*k); a trial succeeds iff the former exceeds (1-eps)k
    std::vector<int> min_covered_per_trial;
    std::vector<double> min_ratio_per_trial;

    int subset_size() const {
        return static_cast<int>(static_cast<long long>(k) * epsilon.num / epsilon.den);
    }
};

// Per trial: a matching-union assignment, then an exact check over all
// eps*k-subsets A of transmitters that |N(A)| > (1-eps)k.
ExpansionExperiment epsilon_experiment(int k, int m, const Rational& epsilon,
                                       int trials, std::uint64_t seed,
                                       std::uint64_t subset_budget = 1'000'000);

std::vector<Rational> default_alpha_grid();  // 1/8, 1/4, 3/8, 1/2

}  // namespace compdof
