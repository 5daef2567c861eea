#include "compdof/certificates.hpp"

#include <algorithm>
#include <numeric>

#include "compdof/error.hpp"

namespace compdof {

namespace {

// carried[j] = number of messages whose transmit set contains j.
std::vector<int> per_transmitter_carried(const MessageAssignment& a) {
    std::vector<int> count(a.k + 1, 0);
    for (const auto& t : a.transmit_sets)
        for (int j : t) ++count[j];
    return count;
}

int count_carried(const MessageAssignment& a, const std::vector<char>& in_s) {
    int carried = 0;
    for (const auto& t : a.transmit_sets)
        for (int j : t)
            if (in_s[j]) {
                ++carried;
                break;
            }
    return carried;
}

std::vector<char> membership(int k, const std::vector<int>& s, const char* op) {
    std::vector<char> in_s(k + 1, 0);
    for (int j : s) {
        if (j < 1 || j > k)
            throw Error(ErrorKind::Domain, std::string(op) + ": set contains " +
                                               std::to_string(j) + " outside 1.." +
                                               std::to_string(k));
        if (in_s[j])
            throw Error(ErrorKind::Domain,
                        std::string(op) + ": set repeats " + std::to_string(j));
        in_s[j] = 1;
    }
    return in_s;
}

// Smallest j outside the set with |C_{set+j}| <= target.
int smallest_feasible_extension(const MessageAssignment& a, std::vector<char>& in_s,
                                int target) {
    for (int j = 1; j <= a.k; ++j) {
        if (in_s[j]) continue;
        in_s[j] = 1;
        if (count_carried(a, in_s) <= target) {
            in_s[j] = 0;
            return j;
        }
        in_s[j] = 0;
    }
    return 0;
}

std::vector<int> sorted_insert(std::vector<int> s, int j) {
    s.insert(std::upper_bound(s.begin(), s.end(), j), j);
    return s;
}

}  // namespace

std::pair<int, int> find_basis(const MessageAssignment& a) {
    require_valid(a);
    const std::vector<int> count = per_transmitter_carried(a);
    for (int j = 1; j <= a.k; ++j)
        if (count[j] <= a.m) return {j, count[j]};
    // Unreachable: sum of counts = sum |T_i| <= m*k, so some count <= m.
    throw Error(ErrorKind::Domain, "find_basis: pigeonhole violated (corrupt assignment)");
}

std::pair<std::vector<int>, TraceStep> extend_step(const MessageAssignment& a,
                                                   const std::vector<int>& set_a) {
    require_valid(a);
    if (a.m < 2) throw Error(ErrorKind::Domain, "extend_step: requires m >= 2");
    std::vector<char> in_s = membership(a.k, set_a, "extend_step");
    const int n = static_cast<int>(set_a.size());
    if (n >= a.k) throw Error(ErrorKind::Domain, "extend_step: |a| must be below k");
    const int carried = count_carried(a, in_s);
    const int pre_bound = (a.m - 1) * n + 1;
    if (carried > pre_bound)
        throw Error(ErrorKind::Domain,
                    "extend_step: precondition |C_a| <= (m-1)n+1 failed (" +
                        std::to_string(carried) + " > " + std::to_string(pre_bound) + ")");

    const int target = (a.m - 1) * (n + 1) + 1;
    const int j = smallest_feasible_extension(a, in_s, target);
    if (j == 0)
        throw Error(ErrorKind::Domain,
                    "extend_step: no feasible transmitter (candidate existence violated)");
    in_s[j] = 1;
    TraceStep step{j, count_carried(a, in_s)};
    return {sorted_insert(set_a, j), step};
}

std::pair<std::vector<int>, TraceStep> extend_step_m3(const MessageAssignment& a,
                                                      const std::vector<int>& set_a,
                                                      int k_param) {
    require_valid(a);
    if (a.m != 3) throw Error(ErrorKind::Domain, "extend_step_m3: requires m = 3");
    if (k_param < 1) throw Error(ErrorKind::Domain, "extend_step_m3: k_param must be positive");
    std::vector<char> in_s = membership(a.k, set_a, "extend_step_m3");
    const int n = static_cast<int>(set_a.size());
    // Exact rational comparisons against (k+1)/4, everything times 4.
    if (4 * n < k_param + 1)
        throw Error(ErrorKind::Domain,
                    "extend_step_m3: precondition |a| >= (K+1)/4 failed (" + std::to_string(n) +
                        " < " + std::to_string(k_param + 1) + "/4)");
    if (n >= k_param)
        throw Error(ErrorKind::Domain, "extend_step_m3: |a| must be below K");
    const int carried = count_carried(a, in_s);
    if (4 * carried > 4 * n + (k_param + 1) + 4)
        throw Error(ErrorKind::Domain,
                    "extend_step_m3: precondition |C_a| <= n + (K+1)/4 + 1 failed (4*" +
                        std::to_string(carried) + " > " +
                        std::to_string(4 * n + k_param + 5) + ")");

    // |C_b| <= (n+1) + (K+1)/4 + 1, i.e. 4|C_b| <= 4n + K + 9.
    const int target = (4 * n + k_param + 9) / 4;
    const int j = smallest_feasible_extension(a, in_s, target);
    if (j == 0)
        throw Error(ErrorKind::Domain,
                    "extend_step_m3: no feasible transmitter (candidate existence violated)");
    in_s[j] = 1;
    TraceStep step{j, count_carried(a, in_s)};
    return {sorted_insert(set_a, j), step};
}

namespace {

// Greedy basis + induction on the restriction to transmitters [1, x]:
// carried counts only messages i <= x whose T_i meets [1, x] (messages
// carried solely above x belong to the ignored tail). Targets are the
// general-step bounds (m-1)s+1 in the restricted counting; the trace
// records carried counts on the full assignment.
std::vector<int> greedy_restricted(const MessageAssignment& a, int x, int steps,
                                   GreedyTrace& trace) {
    const int k = a.k;
    MessageAssignment sub;
    sub.k = x;
    sub.m = a.m;
    sub.transmit_sets.reserve(x);
    for (int i = 0; i < x; ++i) {
        std::vector<int> t;
        for (int j : a.transmit_sets[i])
            if (j <= x) t.push_back(j);
        if (!t.empty()) sub.transmit_sets.push_back(std::move(t));
    }
    // sub may have fewer messages than transmitters; the counting helpers
    // below only need membership arrays sized by transmitter id.
    std::vector<char> in_s(x + 1, 0);
    std::vector<char> in_s_full(k + 1, 0);
    std::vector<int> set_s;

    auto sub_carried = [&]() { return count_carried(sub, in_s); };

    for (int step = 1; step <= steps; ++step) {
        const int target = (a.m - 1) * step + 1;
        int chosen = 0;
        for (int j = 1; j <= x; ++j) {
            if (in_s[j]) continue;
            in_s[j] = 1;
            const bool ok = sub_carried() <= target;
            in_s[j] = 0;
            if (ok) {
                chosen = j;
                break;
            }
        }
        if (chosen == 0)
            throw Error(ErrorKind::Domain,
                        "construct_certificate: no feasible transmitter at step " +
                            std::to_string(step) + " (candidate existence violated)");
        in_s[chosen] = 1;
        in_s_full[chosen] = 1;
        set_s = sorted_insert(std::move(set_s), chosen);
        trace.steps.push_back({chosen, count_carried(a, in_s_full)});
    }
    return set_s;
}

}  // namespace

CertificateSet construct_certificate(const MessageAssignment& a) {
    require_valid(a);
    if (a.m < 2)
        throw Error(ErrorKind::Domain,
                    "construct_certificate: inapplicable for m = 1 (the bound is already the "
                    "half-K baseline)");

    const int k = a.k;
    int x = k;  // restriction boundary; k itself when (k-1)/m is an integer
    if ((k - 1) % a.m != 0) {
        x = k - 1;
        while ((x - 1) % a.m != 0) --x;
    }
    const int steps = (x - 1) / a.m;

    CertificateSet cert;
    cert.kind = CertificateKind::Theorem2;
    cert.set_s = greedy_restricted(a, x, steps, cert.trace);

    std::vector<char> in_s(k + 1, 0);
    for (int j : cert.set_s) in_s[j] = 1;
    cert.carried = count_carried(a, in_s);
    cert.implied_bound = k - steps;
    cert.trace.final_set = cert.set_s;
    cert.trace.final_carried = cert.carried;
    return cert;
}

CertificateSet construct_certificate_m3(const MessageAssignment& a) {
    require_valid(a);
    if (a.m != 3) throw Error(ErrorKind::Domain, "construct_certificate_m3: requires m = 3");
    const int k = a.k;
    const bool admissible = k >= 7 && (k + 1) % 4 == 0 && ((k + 1) / 4) % 2 == 0 &&
                            (k - 7) % 8 == 0;
    if (!admissible) {
        std::string msg = "construct_certificate_m3: K = " + std::to_string(k) +
                          " is not admissible; (K+1)/4 must be an even positive integer and "
                          "(K-7)/8 a nonnegative integer (K = 7, 15, 23, ... = 7 mod 8)";
        if (k > 7) {
            auto [kp, padded] = m3_nearest_admissible(k);
            msg += "; nearest admissible K' = " + std::to_string(kp) +
                   " gives the padded bound " + std::to_string(padded);
        }
        throw Error(ErrorKind::Domain, msg);
    }

    const int x1 = (k + 1) / 4;
    const int x2 = (k - 7) / 8;
    const int x3 = 2 * x1 + 1 + x2;

    CertificateSet cert;
    cert.kind = CertificateKind::Theorem3M3;

    // Phase 1: basis + general induction steps up to |S| = x1, |C_S| <= 2s+1.
    auto [j0, carried0] = find_basis(a);
    std::vector<int> set_s{j0};
    cert.trace.steps.push_back({j0, carried0});
    while (static_cast<int>(set_s.size()) < x1) {
        auto [next, step] = extend_step(a, set_s);
        set_s = std::move(next);
        cert.trace.steps.push_back(step);
    }
    // Phase 2: x2 steps of the m=3 rule, |C_S| <= |S| + x1 + 1 throughout.
    for (int t = 0; t < x2; ++t) {
        auto [next, step] = extend_step_m3(a, set_s, k);
        set_s = std::move(next);
        cert.trace.steps.push_back(step);
    }

    std::vector<char> in_s(k + 1, 0);
    for (int j : set_s) in_s[j] = 1;
    cert.set_s = std::move(set_s);
    cert.carried = count_carried(a, in_s);
    cert.implied_bound = x3;  // = k - (x1 + x2) = 5(k+1)/8
    cert.trace.final_set = cert.set_s;
    cert.trace.final_carried = cert.carried;
    return cert;
}

bool check_counting_inequalities(int k, int m, int n, int s_size, InequalityVariant variant) {
    if (n < 0) throw Error(ErrorKind::Domain, "counting inequality: n must be nonnegative");
    if (s_size < 0) throw Error(ErrorKind::Domain, "counting inequality: s must be nonnegative");
    const long long K = k, M = m, N = n, S = s_size;
    if (variant == InequalityVariant::General) {
        if (m < 2) throw Error(ErrorKind::Domain, "counting inequality (general): requires m >= 2");
        if (K < (M - 1) * (N + 1) + 1)
            throw Error(ErrorKind::Domain,
                        "counting inequality (general): requires k >= (m-1)(n+1)+1");
        if (S > (M - 1) * N + 1)
            throw Error(ErrorKind::Domain,
                        "counting inequality (general): requires s <= (m-1)n+1");
        return M * (K - S) < (K - N) * ((M - 1) * (N + 1) + 2 - S);
    }
    if (m != 3) throw Error(ErrorKind::Domain, "counting inequality (m3): requires m = 3");
    // (K+1)/4 enters the bounds; multiply everything by 4 to stay integral.
    if (4 * K <= 4 * N + (K + 1) + 8)
        throw Error(ErrorKind::Domain, "counting inequality (m3): requires k > n + (k+1)/4 + 2");
    if (4 * S > 4 * N + (K + 1) + 4)
        throw Error(ErrorKind::Domain, "counting inequality (m3): requires s <= n + (k+1)/4 + 1");
    return 12 * (K - S) < (K - N) * (4 * N + (K + 1) + 12 - 4 * S);
}

std::pair<int, int> m3_nearest_admissible(int k) {
    if (k < 7)
        throw Error(ErrorKind::Domain,
                    "m3_nearest_admissible: no admissible K' <= " + std::to_string(k));
    int kp = k - (k - 7) % 8;
    return {kp, 5 * (kp + 1) / 8 + (k - kp)};
}

GridReport counting_grid_general(int max_k, int max_m) {
    GridReport report;
    for (int k = 2; k <= max_k; ++k)
        for (int m = 2; m <= max_m; ++m)
            for (int n = 0; k >= (m - 1) * (n + 1) + 1; ++n)
                for (int s = 0; s <= (m - 1) * n + 1; ++s) {
                    ++report.cases;
                    if (!check_counting_inequalities(k, m, n, s, InequalityVariant::General) &&
                        report.all_true) {
                        report.all_true = false;
                        report.first_failure = "k=" + std::to_string(k) + " m=" +
                                               std::to_string(m) + " n=" + std::to_string(n) +
                                               " s=" + std::to_string(s);
                    }
                }
    return report;
}

GridReport counting_grid_m3(int max_k) {
    GridReport report;
    for (int k = 7; k <= max_k; k += 8) {
        const int q = (k + 1) / 4;
        // The lemma's domain: (k+1)/4 <= n, k > n + (k+1)/4 + 2.
        for (int n = q; k > n + q + 2; ++n)
            for (int s = 0; s <= n + q + 1; ++s) {
                ++report.cases;
                if (!check_counting_inequalities(k, 3, n, s, InequalityVariant::M3) &&
                    report.all_true) {
                    report.all_true = false;
                    report.first_failure = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                           " s=" + std::to_string(s);
                }
            }
    }
    return report;
}

std::string to_string(CertificateKind kind) {
    return kind == CertificateKind::Theorem2 ? "theorem2" : "theorem3_m3";
}

}  // namespace compdof
