#pragma once

// Carried-message sets C_S, the vertex-expansion profile e(i), the subset
// bound B = min_S max(|C_S|, K - |S|) with witness, and the generic-rank
// reconstruction check that underpins the bound.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "compdof/assignment.hpp"

namespace compdof {

enum class ProfileMode { Exact, Sampled };

struct ExpansionProfile {
    int k = 0;
    std::vector<int> e;  // e[i] = min over |A|=i of |N(A)|, i = 0..k
    ProfileMode mode = ProfileMode::Exact;
    int samples_per_size = 0;  // sampled mode only
};

struct BoundResult {
    int value = 0;
    std::vector<int> witness;  // transmitter set attaining the bound
    int i_min = 0;             // smallest cardinality minimizing max(K-i, e(i))
    std::string mode = "exact";  // "exact" or "sampled-upper"
};

struct ExpansionCaps {
    int exact_k = 24;  // exact enumeration walks 2^k subsets
};

// Messages carried by the transmitters in s: {i : T_i intersects s}.
std::vector<int> carried_messages(const MessageAssignment& assignment,
                                  const std::vector<int>& s);

// Exact mode enumerates every subset per cardinality (k <= caps.exact_k);
// sampled mode draws samples_per_size uniform subsets per cardinality and
// keeps the minimum observed, repaired to a monotone profile (still a
// pointwise upper estimate of the exact profile).
ExpansionProfile expansion_profile(const MessageAssignment& assignment,
                                   ProfileMode mode,
                                   int samples_per_size = 64,
                                   std::uint64_t seed = 0,
                                   const ExpansionCaps& caps = {});

// B with witness; ties broken by smallest |S|, then lexicographically
// smallest S. Exact only; k above cap is a budget error.
BoundResult dof_upper_bound(const MessageAssignment& assignment,
                            const ExpansionCaps& caps = {});

// One-sided estimate from a sampled profile: value >= B, and the returned
// witness is an observed subset that certifies B <= value. mode "sampled-upper".
BoundResult dof_upper_bound_sampled(const MessageAssignment& assignment,
                                    int samples_per_size,
                                    std::uint64_t seed);

// (i_min, value) with value = min_i max(K-i, e(i)), smallest i on ties.
// Throws Error(Domain) on a malformed profile.
std::pair<int, int> i_min_of_profile(const ExpansionProfile& profile);

// True iff in every trial the |a| x (k-|s|) generic channel submatrix
// (rows: receivers in a, columns: transmitters outside s) has full column
// rank, so X outside s is reconstructible from Y_a minus noise minus X_s.
// |a| < k-|s| is an underdetermined-system error, distinct from false.
bool reconstruction_check(int k, const std::vector<int>& s,
                          const std::vector<int>& a, int trials,
                          std::uint64_t seed);

// Transmitter-side adjacency: bit (i-1) of result[j-1] set iff j is in T_i.
// Requires k <= 64.
std::vector<std::uint64_t> transmitter_masks(const MessageAssignment& assignment);

}  // namespace compdof
