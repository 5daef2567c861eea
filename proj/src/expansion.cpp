#include "compdof/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "compdof/error.hpp"
#include "compdof/rng.hpp"

namespace compdof {

namespace {

// For equal-popcount masks: a's ascending index sequence is lexicographically
// smaller iff the smallest differing index belongs to a.
bool lex_less_mask(std::uint64_t a, std::uint64_t b) {
    std::uint64_t d = a ^ b;
    if (d == 0) return false;
    return (d & (~d + 1) & a) != 0;
}

struct ExactScan {
    std::vector<int> e;  // size k+1
    int best_value = 0;
    int best_size = 0;
    std::uint64_t best_mask = 0;
};

// Walks all 2^k transmitter subsets; neigh[mask] is reused from the mask
// with its lowest bit cleared, one OR per subset.
ExactScan exact_scan(const std::vector<std::uint32_t>& tadj, int k) {
    ExactScan out;
    out.e.assign(k + 1, k);
    out.e[0] = 0;
    out.best_value = k;  // S = empty: max(0, k - 0)
    out.best_size = 0;
    out.best_mask = 0;

    const std::uint32_t limit = std::uint32_t{1} << k;
    std::vector<std::uint32_t> neigh(limit);
    neigh[0] = 0;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        const std::uint32_t covered_mask = neigh[mask & (mask - 1)] | tadj[std::countr_zero(mask)];
        neigh[mask] = covered_mask;
        const int size = std::popcount(mask);
        const int covered = std::popcount(covered_mask);
        if (covered < out.e[size]) out.e[size] = covered;
        const int value = std::max(covered, k - size);
        if (value < out.best_value ||
            (value == out.best_value &&
             (size < out.best_size ||
              (size == out.best_size && lex_less_mask(mask, out.best_mask))))) {
            out.best_value = value;
            out.best_size = size;
            out.best_mask = mask;
        }
    }
    return out;
}

std::vector<std::uint32_t> transmitter_masks32(const MessageAssignment& a) {
    std::vector<std::uint32_t> tadj(a.k, 0);
    for (int i = 0; i < a.k; ++i)
        for (int j : a.transmit_sets[i]) tadj[j - 1] |= std::uint32_t{1} << i;
    return tadj;
}

std::vector<int> mask_to_set(std::uint64_t mask) {
    std::vector<int> s;
    while (mask) {
        s.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return s;
}

void check_exact_cap(int k, const ExpansionCaps& caps, const char* what) {
    if (k > caps.exact_k)
        throw Error(ErrorKind::Budget,
                    std::string(what) + ": k = " + std::to_string(k) +
                        " exceeds the exact enumeration cap " + std::to_string(caps.exact_k) +
                        "; use sampled mode or raise the cap");
    if (k > 26)
        throw Error(ErrorKind::Budget,
                    std::string(what) + ": exact enumeration is limited to k <= 26");
}

struct SampledProfile {
    std::vector<int> e;
    std::vector<std::uint64_t> argmin;  // subset achieving e[i]
};

SampledProfile sampled_scan(const MessageAssignment& a, int samples_per_size,
                            std::uint64_t seed) {
    const int k = a.k;
    if (k > 64)
        throw Error(ErrorKind::Budget, "sampled profile: k > 64 is not supported");
    if (samples_per_size < 1)
        throw Error(ErrorKind::Domain, "sampled profile: samples_per_size must be positive");

    std::vector<std::uint64_t> tadj(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j : a.transmit_sets[i]) tadj[j - 1] |= std::uint64_t{1} << i;

    SampledProfile out;
    out.e.assign(k + 1, k);
    out.argmin.assign(k + 1, 0);
    out.e[0] = 0;

    Rng rng = make_rng(seed);
    std::vector<int> pool(k);
    for (int size = 1; size <= k; ++size) {
        for (int t = 0; t < samples_per_size; ++t) {
            std::iota(pool.begin(), pool.end(), 0);
            shuffle_prefix(pool, static_cast<std::size_t>(size), rng);
            std::uint64_t mask = 0, covered_mask = 0;
            for (int p = 0; p < size; ++p) {
                mask |= std::uint64_t{1} << pool[p];
                covered_mask |= tadj[pool[p]];
            }
            const int covered = std::popcount(covered_mask);
            if (covered < out.e[size]) {
                out.e[size] = covered;
                out.argmin[size] = mask;
            }
        }
    }

    // Monotone repair: a size-j subset with |N(A)| = v also shows e(i) <= v
    // for every i <= j (any i-subset of A has a neighborhood inside N(A)),
    // so taking suffix minima stays an upper estimate of the exact profile.
    for (int i = k - 1; i >= 1; --i)
        if (out.e[i + 1] < out.e[i]) {
            out.e[i] = out.e[i + 1];
            out.argmin[i] = out.argmin[i + 1];
        }
    return out;
}

int i_min_from_e(const std::vector<int>& e, int k, int* value_out) {
    int best_i = 0;
    int best_value = k;  // i = 0 candidate
    for (int i = 1; i <= k; ++i) {
        const int candidate = std::max(k - i, e[i]);
        if (candidate < best_value) {
            best_value = candidate;
            best_i = i;
        }
    }
    *value_out = best_value;
    return best_i;
}

}  // namespace

std::vector<std::uint64_t> transmitter_masks(const MessageAssignment& a) {
    require_valid(a);
    if (a.k > 64) throw Error(ErrorKind::Budget, "transmitter_masks: k > 64 is not supported");
    std::vector<std::uint64_t> tadj(a.k, 0);
    for (int i = 0; i < a.k; ++i)
        for (int j : a.transmit_sets[i]) tadj[j - 1] |= std::uint64_t{1} << i;
    return tadj;
}

std::vector<int> carried_messages(const MessageAssignment& a, const std::vector<int>& s) {
    require_valid(a);
    std::vector<char> in_s(a.k + 1, 0);
    for (int j : s) {
        if (j < 1 || j > a.k)
            throw Error(ErrorKind::Domain,
                        "carried_messages: transmitter index " + std::to_string(j) +
                            " outside 1.." + std::to_string(a.k));
        in_s[j] = 1;
    }
    std::vector<int> carried;
    for (int i = 0; i < a.k; ++i)
        for (int j : a.transmit_sets[i])
            if (in_s[j]) {
                carried.push_back(i + 1);
                break;
            }
    return carried;
}

ExpansionProfile expansion_profile(const MessageAssignment& a, ProfileMode mode,
                                   int samples_per_size, std::uint64_t seed,
                                   const ExpansionCaps& caps) {
    require_valid(a);
    ExpansionProfile profile;
    profile.k = a.k;
    profile.mode = mode;
    if (mode == ProfileMode::Exact) {
        check_exact_cap(a.k, caps, "expansion_profile");
        profile.e = exact_scan(transmitter_masks32(a), a.k).e;
    } else {
        profile.e = sampled_scan(a, samples_per_size, seed).e;
        profile.samples_per_size = samples_per_size;
    }
    return profile;
}

BoundResult dof_upper_bound(const MessageAssignment& a, const ExpansionCaps& caps) {
    require_valid(a);
    check_exact_cap(a.k, caps, "dof_upper_bound");
    const ExactScan scan = exact_scan(transmitter_masks32(a), a.k);
    BoundResult result;
    result.value = scan.best_value;
    result.witness = mask_to_set(scan.best_mask);
    int value_from_profile = 0;
    result.i_min = i_min_from_e(scan.e, a.k, &value_from_profile);
    result.mode = "exact";
    return result;
}

BoundResult dof_upper_bound_sampled(const MessageAssignment& a, int samples_per_size,
                                    std::uint64_t seed) {
    require_valid(a);
    const SampledProfile sampled = sampled_scan(a, samples_per_size, seed);
    BoundResult result;
    result.i_min = i_min_from_e(sampled.e, a.k, &result.value);
    // The recorded subset certifies B <= value: |C_A| = e[i_min] <= value and
    // k - |A| <= k - i_min <= value.
    result.witness = mask_to_set(sampled.argmin[result.i_min]);
    result.mode = "sampled-upper";
    return result;
}

std::pair<int, int> i_min_of_profile(const ExpansionProfile& profile) {
    const int k = profile.k;
    if (k < 1 || static_cast<int>(profile.e.size()) != k + 1)
        throw Error(ErrorKind::Domain, "malformed profile: e must have k+1 entries");
    if (profile.e[0] != 0)
        throw Error(ErrorKind::Domain, "malformed profile: e[0] must be 0");
    for (int i = 0; i <= k; ++i) {
        if (profile.e[i] < 0 || profile.e[i] > k)
            throw Error(ErrorKind::Domain, "malformed profile: e[i] outside 0..k");
        if (i > 0 && profile.e[i] < profile.e[i - 1])
            throw Error(ErrorKind::Domain,
                        "malformed profile: e is not non-decreasing at i = " + std::to_string(i));
    }
    int value = 0;
    int i_min = i_min_from_e(profile.e, k, &value);
    return {i_min, value};
}

namespace {

// Rank by Gaussian elimination with scaled partial pivoting; an entry below
// rel_tol times its row scale counts as zero.
int numeric_rank(std::vector<double>& mat, int rows, int cols, double rel_tol) {
    std::vector<double> scale(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) scale[r] = std::max(scale[r], std::fabs(mat[r * cols + c]));
        if (scale[r] == 0.0) scale[r] = 1.0;
    }
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        double best = rel_tol;
        for (int r = rank; r < rows; ++r) {
            const double ratio = std::fabs(mat[r * cols + c]) / scale[r];
            if (ratio > best) {
                best = ratio;
                pivot = r;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int cc = 0; cc < cols; ++cc)
                std::swap(mat[pivot * cols + cc], mat[rank * cols + cc]);
            std::swap(scale[pivot], scale[rank]);
        }
        for (int r = rank + 1; r < rows; ++r) {
            const double f = mat[r * cols + c] / mat[rank * cols + c];
            for (int cc = c; cc < cols; ++cc) mat[r * cols + cc] -= f * mat[rank * cols + cc];
        }
        ++rank;
    }
    return rank;
}

void check_index_set(int k, const std::vector<int>& s, const char* name) {
    std::vector<char> seen(k + 1, 0);
    for (int v : s) {
        if (v < 1 || v > k)
            throw Error(ErrorKind::Domain,
                        std::string("reconstruction_check: ") + name + " contains " +
                            std::to_string(v) + " outside 1.." + std::to_string(k));
        if (seen[v])
            throw Error(ErrorKind::Domain,
                        std::string("reconstruction_check: ") + name + " repeats " +
                            std::to_string(v));
        seen[v] = 1;
    }
}

}  // namespace

bool reconstruction_check(int k, const std::vector<int>& s, const std::vector<int>& a,
                          int trials, std::uint64_t seed) {
    if (k < 1) throw Error(ErrorKind::Domain, "reconstruction_check: k must be positive");
    if (trials < 1) throw Error(ErrorKind::Domain, "reconstruction_check: trials must be positive");
    check_index_set(k, s, "s");
    check_index_set(k, a, "a");

    const int unknowns = k - static_cast<int>(s.size());
    const int rows = static_cast<int>(a.size());
    if (rows < unknowns)
        throw Error(ErrorKind::Domain,
                    "underdetermined: fewer equations than unknowns (" + std::to_string(rows) +
                        " < " + std::to_string(unknowns) + ")");
    if (unknowns == 0) return true;

    constexpr double rel_tol = 1e-9;
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(substream_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<double> mat(static_cast<std::size_t>(rows) * unknowns);
        for (double& x : mat) x = standard_normal(rng);
        if (numeric_rank(mat, rows, unknowns, rel_tol) < unknowns) return false;
    }
    return true;
}

}  // namespace compdof
