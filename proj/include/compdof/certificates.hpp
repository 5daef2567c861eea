#pragma once

// Constructive certificates: explicit transmitter sets S with
// |C_S| <= K - |S|, witnessing B <= K - |S|. Built from the pigeonhole
// basis and greedy induction steps, plus the counting inequalities that
// guarantee the greedy never runs out of candidates.

#include <string>
#include <utility>
#include <vector>

#include "compdof/assignment.hpp"

namespace compdof {

struct TraceStep {
    int added = 0;          // transmitter appended to the set
    int carried_after = 0;  // |C_S| on the full assignment after the addition
};

struct GreedyTrace {
    std::vector<TraceStep> steps;
    std::vector<int> final_set;
    int final_carried = 0;
};

enum class CertificateKind { Theorem2, Theorem3M3 };

struct CertificateSet {
    std::vector<int> set_s;
    int carried = 0;        // |C_S| on the full assignment
    int implied_bound = 0;  // K - |S| in the square case; B <= implied_bound
    GreedyTrace trace;
    CertificateKind kind = CertificateKind::Theorem2;
};

enum class InequalityVariant { General, M3 };

// Smallest-index transmitter carrying at most m messages; guaranteed to
// exist by pigeonhole since the incidence count is at most m*k.
std::pair<int, int> find_basis(const MessageAssignment& assignment);

// One induction step for m >= 2: from |a|=n with |C_a| <= (m-1)n+1, adds the
// smallest transmitter j outside a with |C_{a+j}| <= (m-1)(n+1)+1. When
// k <= (m-1)(n+1)+1 the target is vacuous and the smallest unused j is taken.
std::pair<std::vector<int>, TraceStep> extend_step(const MessageAssignment& assignment,
                                                   const std::vector<int>& a);

// The m=3 step: from |a|=n with (K+1)/4 <= n and |C_a| <= n + (K+1)/4 + 1,
// adds the smallest j outside a with |C_{a+j}| <= (n+1) + (K+1)/4 + 1.
// k_param is the K entering the (K+1)/4 terms (normally assignment.k).
std::pair<std::vector<int>, TraceStep> extend_step_m3(const MessageAssignment& assignment,
                                                      const std::vector<int>& a,
                                                      int k_param);

// For (k-1)/m integer n: greedy basis + induction to S with |S|=n and
// |C_S| <= (m-1)n+1 = k-n. Otherwise runs on the first x users (x the
// largest integer below k with (x-1)/m integer, transmit sets intersected
// with [1,x]) and reports the padded bound (x(m-1)+1)/m + (k-x) = k - n'.
CertificateSet construct_certificate(const MessageAssignment& assignment);

// Two-phase m=3 construction for k with (k+1)/4 an even positive integer and
// (k-7)/8 a nonnegative integer (k = 7 mod 8): phase 1 grows S_1 to
// x_1 = (k+1)/4 with |C| <= 2x_1+1, phase 2 extends by x_2 = (k-7)/8 steps
// to S_2 with |C| <= x_3 = K - |S_2| = 5(k+1)/8.
CertificateSet construct_certificate_m3(const MessageAssignment& assignment);

// General: truth of m(k-s) < (k-n)((m-1)(n+1)+2-s) under k >= (m-1)(n+1)+1,
// m >= 2, s <= (m-1)n+1. M3: truth of 3(k-s) < (k-n)(n+(k+1)/4+3-s) under
// m = 3, k > n+(k+1)/4+2, s <= n+(k+1)/4+1. Precondition violations throw,
// they are not false.
bool check_counting_inequalities(int k, int m, int n, int s_size,
                                 InequalityVariant variant);

// Largest admissible k' <= k for the m=3 construction together with the
// padded bound 5(k'+1)/8 + (k-k').
std::pair<int, int> m3_nearest_admissible(int k);

struct GridReport {
    long long cases = 0;
    bool all_true = true;
    std::string first_failure;
};

// Every admissible (k, m, n, s) must be true; these are the finite grids
// behind the induction steps' candidate-existence guarantees.
GridReport counting_grid_general(int max_k = 40, int max_m = 6);
// The m3 grid ranges over the lemma's own domain, which includes
// n >= (k+1)/4 (the inequality is false below it).
GridReport counting_grid_m3(int max_k = 63);

std::string to_string(CertificateKind kind);

}  // namespace compdof
