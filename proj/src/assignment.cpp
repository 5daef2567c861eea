#include "compdof/assignment.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "compdof/error.hpp"
#include "compdof/rng.hpp"

namespace compdof {

namespace {

std::string set_to_string(const std::vector<int>& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << "}";
    return out.str();
}

void sort_dedup(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Uniform draw among the nonempty subsets of `window` of size <= max_size,
// weighted per size by the subset counts so the draw is uniform over all of
// them, not uniform over sizes.
std::vector<int> draw_bounded_subset(std::vector<int> window, int max_size, Rng& rng) {
    const int w = static_cast<int>(window.size());
    const int smax = std::min(max_size, w);
    std::uint64_t total = 0;
    for (int s = 1; s <= smax; ++s) total += binomial(w, s);
    std::uint64_t u = bounded(rng, total);
    int size = smax;
    for (int s = 1; s <= smax; ++s) {
        std::uint64_t c = binomial(w, s);
        if (u < c) {
            size = s;
            break;
        }
        u -= c;
    }
    shuffle_prefix(window, static_cast<std::size_t>(size), rng);
    std::vector<int> subset(window.begin(), window.begin() + size);
    std::sort(subset.begin(), subset.end());
    return subset;
}

void check_spec(const GeneratorSpec& spec) {
    if (spec.k < 1) throw Error(ErrorKind::Domain, "generator spec: k must be positive");
    if (spec.kind == GeneratorKind::Full) {
        if (spec.m != 0 && spec.m != spec.k)
            throw Error(ErrorKind::Domain, "generator spec: full cooperation forces m = k");
    } else {
        if (spec.m < 1) throw Error(ErrorKind::Domain, "generator spec: m must be positive");
        if (spec.m > spec.k) throw Error(ErrorKind::Domain, "generator spec: m must not exceed k");
    }
    if (spec.radius != 0 && spec.kind != GeneratorKind::LocalRandom)
        throw Error(ErrorKind::Domain, "generator spec: radius applies to local_random only");
    if (spec.radius < 0)
        throw Error(ErrorKind::Domain, "generator spec: radius must be nonnegative");
    if (spec.wraparound && spec.kind != GeneratorKind::Successive)
        throw Error(ErrorKind::Domain, "generator spec: wraparound applies to successive only");
}

}  // namespace

ValidationReport validate(const MessageAssignment& a) {
    ValidationReport report;
    auto add = [&](int index, const char* rule, const std::string& detail) {
        report.violations.push_back({index, rule, detail});
    };

    if (a.k < 1) add(0, "k_positive", "k = " + std::to_string(a.k) + " must be positive");
    if (a.m < 1) add(0, "m_positive", "m = " + std::to_string(a.m) + " must be positive");
    if (a.k >= 1 && a.m > a.k)
        add(0, "m_le_k", "m = " + std::to_string(a.m) + " exceeds k = " + std::to_string(a.k));
    if (static_cast<int>(a.transmit_sets.size()) != a.k)
        add(0, "set_count",
            "expected " + std::to_string(a.k) + " transmit sets, got " +
                std::to_string(a.transmit_sets.size()));

    for (std::size_t idx = 0; idx < a.transmit_sets.size(); ++idx) {
        const auto& t = a.transmit_sets[idx];
        const int i = static_cast<int>(idx) + 1;
        if (t.empty()) {
            add(i, "nonempty", "T_" + std::to_string(i) + " is empty");
            continue;
        }
        if (a.m >= 1 && static_cast<int>(t.size()) > a.m)
            add(i, "size_le_m",
                "|T_" + std::to_string(i) + "| = " + std::to_string(t.size()) +
                    " exceeds cooperation order m = " + std::to_string(a.m));
        for (int v : t)
            if (v < 1 || v > a.k)
                add(i, "range",
                    "T_" + std::to_string(i) + " contains " + std::to_string(v) +
                        " outside 1.." + std::to_string(a.k));
        for (std::size_t j = 1; j < t.size(); ++j)
            if (t[j] <= t[j - 1]) {
                add(i, "sorted_unique",
                    "T_" + std::to_string(i) + " is not strictly ascending: " + set_to_string(t));
                break;
            }
    }
    report.valid = report.violations.empty();
    return report;
}

void require_valid(const MessageAssignment& a) {
    ValidationReport report = validate(a);
    if (report.valid) return;
    const Violation& v = report.violations.front();
    throw Error(ErrorKind::Validation,
                "invalid assignment: [" + v.rule + "] " + v.detail +
                    (report.violations.size() > 1
                         ? " (+" + std::to_string(report.violations.size() - 1) + " more)"
                         : ""));
}

std::vector<std::vector<int>> generate_matchings(int k, int m, std::uint64_t seed) {
    if (k < 1 || m < 1) throw Error(ErrorKind::Domain, "matchings: k and m must be positive");
    Rng rng = make_rng(seed);
    std::vector<std::vector<int>> matchings;
    matchings.reserve(m);
    for (int r = 0; r < m; ++r) {
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 1);
        shuffle_all(perm, rng);
        matchings.push_back(std::move(perm));
    }
    return matchings;
}

MessageAssignment generate(const GeneratorSpec& spec, std::uint64_t seed) {
    check_spec(spec);
    const int k = spec.k;
    MessageAssignment a;
    a.k = k;
    a.m = spec.kind == GeneratorKind::Full ? k : spec.m;
    a.transmit_sets.resize(k);

    switch (spec.kind) {
    case GeneratorKind::Identity:
        for (int i = 1; i <= k; ++i) a.transmit_sets[i - 1] = {i};
        break;

    case GeneratorKind::Full: {
        std::vector<int> all(k);
        std::iota(all.begin(), all.end(), 1);
        for (int i = 1; i <= k; ++i) a.transmit_sets[i - 1] = all;
        break;
    }

    case GeneratorKind::Successive:
        for (int i = 1; i <= k; ++i) {
            std::vector<int> t;
            for (int d = 0; d < spec.m; ++d) {
                int j = i + d;
                if (spec.wraparound)
                    j = (j - 1) % k + 1;
                else if (j > k)
                    break;
                t.push_back(j);
            }
            sort_dedup(t);
            a.transmit_sets[i - 1] = std::move(t);
        }
        break;

    case GeneratorKind::LocalRandom: {
        Rng rng = make_rng(seed);
        for (int i = 1; i <= k; ++i) {
            const int lo = std::max(1, i - spec.radius);
            const int hi = std::min(k, i + spec.radius);
            if (lo > hi)
                throw Error(ErrorKind::Domain,
                            "local_random: empty window at index " + std::to_string(i));
            std::vector<int> window(hi - lo + 1);
            std::iota(window.begin(), window.end(), lo);
            a.transmit_sets[i - 1] = draw_bounded_subset(std::move(window), spec.m, rng);
        }
        break;
    }

    case GeneratorKind::UniformRandom: {
        Rng rng = make_rng(seed);
        std::vector<int> all(k);
        std::iota(all.begin(), all.end(), 1);
        for (int i = 1; i <= k; ++i)
            a.transmit_sets[i - 1] = draw_bounded_subset(all, spec.m, rng);
        break;
    }

    case GeneratorKind::MatchingUnion: {
        auto matchings = generate_matchings(k, spec.m, seed);
        for (int i = 1; i <= k; ++i) {
            std::vector<int> t;
            t.reserve(spec.m);
            for (const auto& perm : matchings) t.push_back(perm[i - 1]);
            sort_dedup(t);
            a.transmit_sets[i - 1] = std::move(t);
        }
        break;
    }
    }
    return a;
}

namespace {

// Adjacency rows under a transmitter (column) order: bit (k-1-p) of row i
// set iff cols[p] is in T_{i+1}, so column position 0 is the most
// significant bit and comparing row values compares bit strings.
std::vector<std::uint64_t> permuted_rows(const MessageAssignment& a,
                                         const std::vector<int>& cols) {
    const int k = a.k;
    std::vector<int> pos(k + 1, 0);  // transmitter id -> column position
    for (int p = 0; p < k; ++p) pos[cols[p]] = p;
    std::vector<std::uint64_t> rows(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j : a.transmit_sets[i])
            rows[i] |= std::uint64_t{1} << (k - 1 - pos[j]);
    return rows;
}

}  // namespace

MessageAssignment canonical_form(const MessageAssignment& a, int cap) {
    require_valid(a);
    if (a.k > cap)
        throw Error(ErrorKind::Budget,
                    "canonical_form: k = " + std::to_string(a.k) + " exceeds cap " +
                        std::to_string(cap) + "; run searches without canonical dedup instead");

    const int k = a.k;
    std::vector<int> cols(k);
    std::iota(cols.begin(), cols.end(), 1);

    // For a fixed column order the optimal message relabeling just sorts the
    // rows, so the minimum over both relabelings is a minimum over column
    // permutations of the sorted row vector.
    std::vector<std::uint64_t> best;
    do {
        std::vector<std::uint64_t> rows = permuted_rows(a, cols);
        std::sort(rows.begin(), rows.end());
        if (best.empty() || rows < best) best = std::move(rows);
    } while (std::next_permutation(cols.begin(), cols.end()));

    MessageAssignment canon;
    canon.k = k;
    canon.m = a.m;
    canon.transmit_sets.resize(k);
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < k; ++p)
            if (best[i] >> (k - 1 - p) & 1) canon.transmit_sets[i].push_back(p + 1);
    return canon;
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    if (name == "identity") return GeneratorKind::Identity;
    if (name == "full") return GeneratorKind::Full;
    if (name == "successive") return GeneratorKind::Successive;
    if (name == "local_random") return GeneratorKind::LocalRandom;
    if (name == "uniform_random") return GeneratorKind::UniformRandom;
    if (name == "matching_union") return GeneratorKind::MatchingUnion;
    throw Error(ErrorKind::Domain, "unknown generator kind: " + name);
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Identity: return "identity";
    case GeneratorKind::Full: return "full";
    case GeneratorKind::Successive: return "successive";
    case GeneratorKind::LocalRandom: return "local_random";
    case GeneratorKind::UniformRandom: return "uniform_random";
    case GeneratorKind::MatchingUnion: return "matching_union";
    }
    return "?";
}

}  // namespace compdof
