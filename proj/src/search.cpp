#include "compdof/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "compdof/rng.hpp"

namespace compdof {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> mask_to_set32(std::uint32_t mask) {
    std::vector<int> s;
    while (mask) {
        s.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return s;
}

std::string canonical_key(const MessageAssignment& a, int cap) {
    const MessageAssignment canon = canonical_form(a, cap);
    std::string key;
    key.reserve(static_cast<std::size_t>(a.k) * (a.m + 1));
    for (const auto& t : canon.transmit_sets) {
        for (int j : t) key.push_back(static_cast<char>(j));
        key.push_back('\0');
    }
    return key;
}

void check_rational_range(const Rational& r, bool half_cap, const char* what) {
    if (r.den <= 0 || r.num <= 0)
        throw Error(ErrorKind::Domain, std::string(what) + ": must be a positive rational");
    if (half_cap ? 2 * r.num > r.den : r.num >= r.den)
        throw Error(ErrorKind::Domain,
                    std::string(what) + (half_cap ? ": must lie in (0, 1/2]" : ": must lie in (0, 1)"));
}

}  // namespace

SearchReport eta_out_exact(int k, int m, const SearchBudget& budget) {
    if (k < 1 || m < 1 || m > k)
        throw Error(ErrorKind::Domain, "eta_out_exact: need 1 <= m <= k");
    if (k > 16)
        throw SearchBudgetError(
            "eta_out_exact: k = " + std::to_string(k) + " is far beyond exhaustive reach",
            std::nullopt);

    const auto start = Clock::now();

    // Per-message candidate transmit sets: nonempty masks of popcount <= m,
    // ascending. Assignments are enumerated lexicographically over
    // (T_1, ..., T_k) with T_k varying fastest.
    std::vector<std::uint32_t> choices;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask)
        if (std::popcount(mask) <= m) choices.push_back(mask);
    const std::uint64_t per_message = choices.size();

    unsigned __int128 total128 = 1;
    for (int i = 0; i < k; ++i) total128 *= per_message;
    const bool over_budget = total128 > budget.max_assignments;
    const std::uint64_t total =
        over_budget ? budget.max_assignments : static_cast<std::uint64_t>(total128);
    // If over budget, still evaluate a prefix, but keep the wasted work
    // bounded: the enumeration is refused outright once per-assignment
    // scans would dwarf any useful prefix.
    std::uint64_t to_evaluate = total;
    if (over_budget) {
        const std::uint64_t work_cap = (std::uint64_t{1} << 28) >> k;
        to_evaluate = std::min<std::uint64_t>(budget.max_assignments, std::max<std::uint64_t>(work_cap, 1));
    }

    const bool dedup = budget.dedup && k <= budget.dedup_cap;
    std::unordered_set<std::string> seen;

    SearchReport report;
    report.k = k;
    report.m = m;
    report.method = SearchMethod::Exhaustive;
    report.best_value = -1;

    std::vector<std::size_t> odometer(k, 0);
    MessageAssignment a;
    a.k = k;
    a.m = m;
    a.transmit_sets.assign(k, {});

    std::uint64_t evaluated = 0;
    bool done = false;
    while (!done && evaluated < to_evaluate) {
        for (int i = 0; i < k; ++i) a.transmit_sets[i] = mask_to_set32(choices[odometer[i]]);
        ++evaluated;
        bool skip = false;
        if (dedup) {
            skip = !seen.insert(canonical_key(a, budget.dedup_cap)).second;
            if (skip) ++report.dedup_hits;
        }
        if (!skip) {
            const int value = dof_upper_bound(a, budget.caps).value;
            if (value > report.best_value) {
                report.best_value = value;
                report.best_assignment = a;
            }
        }
        // odometer: rightmost position increments first
        int pos = k - 1;
        while (pos >= 0 && ++odometer[pos] == choices.size()) {
            odometer[pos] = 0;
            --pos;
        }
        done = pos < 0;
    }

    report.trials_or_count = over_budget ? evaluated : total;
    report.elapsed_seconds = seconds_since(start);

    if (over_budget) {
        report.method = SearchMethod::Random;  // downgraded confidence: prefix only
        throw SearchBudgetError(
            "eta_out_exact: assignment space exceeds the budget of " +
                std::to_string(budget.max_assignments) + " (evaluated a prefix of " +
                std::to_string(evaluated) + ")",
            std::move(report));
    }
    return report;
}

SearchReport eta_out_random(int k, int m, int trials, std::uint64_t seed,
                            GeneratorKind generator, const ExpansionCaps& caps) {
    if (trials < 1) throw Error(ErrorKind::Domain, "eta_out_random: trials must be positive");
    if (generator != GeneratorKind::MatchingUnion && generator != GeneratorKind::UniformRandom)
        throw Error(ErrorKind::Domain,
                    "eta_out_random: generator must be matching_union or uniform_random");
    if (k > caps.exact_k)
        throw Error(ErrorKind::Budget,
                    "eta_out_random: k = " + std::to_string(k) +
                        " exceeds the exact bound cap " + std::to_string(caps.exact_k) +
                        " (every trial needs an exact B)");

    const auto start = Clock::now();
    const GeneratorSpec spec{generator, k, m, 0, false};

    SearchReport report;
    report.k = k;
    report.m = m;
    report.method = SearchMethod::Random;
    report.seed = seed;
    report.trials_or_count = static_cast<std::uint64_t>(trials);
    report.best_value = -1;

    for (int t = 0; t < trials; ++t) {
        MessageAssignment a = generate(spec, substream_seed(seed, static_cast<std::uint64_t>(t)));
        const int value = dof_upper_bound(a, caps).value;
        if (value > report.best_value) {
            report.best_value = value;
            report.best_assignment = std::move(a);
        }
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

std::vector<AlphaRatio> expansion_ratio(const MessageAssignment& a,
                                        const std::vector<Rational>& alphas,
                                        const ExpansionCaps& caps) {
    const ExpansionProfile profile = expansion_profile(a, ProfileMode::Exact, 0, 0, caps);
    std::vector<AlphaRatio> out;
    out.reserve(alphas.size());
    for (const Rational& alpha : alphas) {
        check_rational_range(alpha, /*half_cap=*/true, "expansion_ratio: alpha");
        // round-half-up of alpha * k, exactly in integers
        const long long i = (2 * alpha.num * a.k + alpha.den) / (2 * alpha.den);
        if (i < 1 || i > a.k / 2)
            throw Error(ErrorKind::Domain,
                        "expansion_ratio: alpha*k rounds to " + std::to_string(i) +
                            ", outside 1..floor(k/2)");
        AlphaRatio r;
        r.alpha = alpha;
        r.i = static_cast<int>(i);
        r.e_i = profile.e[r.i];
        r.ratio = static_cast<double>(r.e_i) / static_cast<double>(r.i);
        out.push_back(r);
    }
    return out;
}

double epsilon_threshold(const Rational& epsilon) {
    check_rational_range(epsilon, /*half_cap=*/false, "epsilon_threshold: epsilon");
    const double eps = static_cast<double>(epsilon.num) / static_cast<double>(epsilon.den);
    const double entropy = -(eps * std::log2(eps) + (1.0 - eps) * std::log2(1.0 - eps));
    return 2.0 * entropy / (-eps * std::log2(1.0 - eps));
}

int minimal_cooperation_order(const Rational& epsilon) {
    return static_cast<int>(std::floor(epsilon_threshold(epsilon))) + 1;
}

ExpansionExperiment epsilon_experiment(int k, int m, const Rational& epsilon, int trials,
                                       std::uint64_t seed, std::uint64_t subset_budget) {
    if (k < 1 || m < 1 || m > k)
        throw Error(ErrorKind::Domain, "epsilon_experiment: need 1 <= m <= k");
    if (trials < 1) throw Error(ErrorKind::Domain, "epsilon_experiment: trials must be positive");
    check_rational_range(epsilon, /*half_cap=*/true, "epsilon_experiment: epsilon");
    if ((static_cast<long long>(k) * epsilon.num) % epsilon.den != 0)
        throw Error(ErrorKind::Domain, "epsilon_experiment: epsilon * k must be an integer");
    const int subset_size = static_cast<int>(static_cast<long long>(k) * epsilon.num / epsilon.den);
    if (subset_size < 1)
        throw Error(ErrorKind::Domain, "epsilon_experiment: epsilon * k must be at least 1");
    if (binomial(k, subset_size) > subset_budget)
        throw Error(ErrorKind::Budget,
                    "epsilon_experiment: C(" + std::to_string(k) + ", " +
                        std::to_string(subset_size) + ") exceeds the subset budget; use a smaller k");

    ExpansionExperiment experiment;
    experiment.k = k;
    experiment.m = m;
    experiment.epsilon = epsilon;
    experiment.trials = trials;
    experiment.seed = seed;
    experiment.min_covered_per_trial.reserve(trials);
    experiment.min_ratio_per_trial.reserve(trials);

    const int needed = k - subset_size;  // success means |N(A)| > (1-eps)k = k - eps*k
    const GeneratorSpec spec{GeneratorKind::MatchingUnion, k, m, 0, false};

    for (int t = 0; t < trials; ++t) {
        const MessageAssignment a =
            generate(spec, substream_seed(seed, static_cast<std::uint64_t>(t)));
        const std::vector<std::uint64_t> tadj = transmitter_masks(a);

        int min_covered = k;
        std::vector<int> comb(subset_size);
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            std::uint64_t covered_mask = 0;
            for (int idx : comb) covered_mask |= tadj[idx];
            min_covered = std::min(min_covered, std::popcount(covered_mask));
            // next lexicographic combination
            int pos = subset_size - 1;
            while (pos >= 0 && comb[pos] == k - subset_size + pos) --pos;
            if (pos < 0) break;
            ++comb[pos];
            for (int q = pos + 1; q < subset_size; ++q) comb[q] = comb[q - 1] + 1;
        }

        if (min_covered > needed) ++experiment.successes;
        experiment.min_covered_per_trial.push_back(min_covered);
        experiment.min_ratio_per_trial.push_back(static_cast<double>(min_covered) /
                                                 static_cast<double>(subset_size));
    }
    return experiment;
}

std::vector<Rational> default_alpha_grid() {
    return {{1, 8}, {1, 4}, {3, 8}, {1, 2}};
}

}  // namespace compdof
