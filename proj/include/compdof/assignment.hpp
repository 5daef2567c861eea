#pragma once

// Message assignments for the K-user fully connected channel with CoMP
// transmission. Each message i has a transmit set T_i of at most m
// transmitters; equivalently a bipartite graph between transmitters and
// messages whose message-side degree is bounded by the cooperation order m.

#include <cstdint>
#include <string>
#include <vector>

namespace compdof {

struct MessageAssignment {
    int k = 0;  // number of users (transmitters = messages = k)
    int m = 0;  // cooperation order, max |T_i|
    // transmit_sets[i-1] is T_i: 1-based transmitter ids, sorted ascending.
    std::vector<std::vector<int>> transmit_sets;

    bool operator==(const MessageAssignment&) const = default;
};

struct Violation {
    int index = 0;       // 1-based message index, 0 for assignment-level rules
    std::string rule;    // machine-readable rule id
    std::string detail;
};

struct ValidationReport {
    bool valid = false;
    std::vector<Violation> violations;
};

enum class GeneratorKind {
    Identity,
    Full,
    Successive,
    LocalRandom,
    UniformRandom,
    MatchingUnion,
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Identity;
    int k = 0;
    int m = 0;
    int radius = 0;           // LocalRandom only
    bool wraparound = false;  // Successive only
};

// Reports every violated invariant; never throws, violations are data.
ValidationReport validate(const MessageAssignment& assignment);

// Entry check used by operations whose precondition is a valid assignment;
// throws Error(Validation) naming the first violation.
void require_valid(const MessageAssignment& assignment);

// Deterministic function of (spec, seed). Throws Error(Domain) on an
// infeasible spec.
MessageAssignment generate(const GeneratorSpec& spec, std::uint64_t seed);

// The m independent uniform perfect matchings behind MatchingUnion, before
// the union: matchings[r][i-1] is the transmitter matched to message i in
// matching r. generate() takes their deduplicated union.
std::vector<std::vector<int>> generate_matchings(int k, int m, std::uint64_t seed);

// Lexicographically minimal adjacency matrix over independent relabelings of
// transmitters and of messages; equal canonical forms iff the bipartite
// graphs are isomorphic. Throws Error(Budget) for k above cap.
MessageAssignment canonical_form(const MessageAssignment& assignment, int cap = 6);

GeneratorKind generator_kind_from_string(const std::string& name);
std::string to_string(GeneratorKind kind);

}  // namespace compdof
