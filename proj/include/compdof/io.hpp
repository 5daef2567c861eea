#pragma once

// JSON/CSV interchange. The assignment document
// {"k": int, "m": int, "transmit_sets": [[int,...],...]} with 1-based,
// sorted, deduplicated sets is the interchange unit for all CLI commands.

#include <string>
#include <vector>

#include "compdof/assignment.hpp"
#include "compdof/certificates.hpp"
#include "compdof/expansion.hpp"
#include "compdof/search.hpp"

namespace compdof {

// Parses and normalizes (sorts, dedups) without validating.
MessageAssignment parse_assignment_lenient(const std::string& text);

// parse_assignment_lenient + validate; throws Error(Validation) rendering
// the report when the document is structurally fine but invalid.
MessageAssignment parse_assignment_json(const std::string& text);

std::string assignment_to_json(const MessageAssignment& assignment, int indent = 2);

std::string validation_report_to_json(const ValidationReport& report, int indent = 2);
std::string bound_result_to_json(const BoundResult& result, int indent = 2);
std::string profile_to_csv(const ExpansionProfile& profile);
std::string profile_to_json(const ExpansionProfile& profile, int indent = 2);
std::string certificate_to_json(const CertificateSet& certificate, int indent = 2);
std::string search_report_to_json(const SearchReport& report, int indent = 2);
std::string experiment_to_csv(const ExpansionExperiment& experiment);
std::string experiment_to_json(const ExpansionExperiment& experiment, int indent = 2);
std::string alpha_ratios_to_csv(const std::vector<AlphaRatio>& ratios);
std::string alpha_ratios_to_json(const std::vector<AlphaRatio>& ratios, int indent = 2);
std::string grid_report_to_json(const GridReport& general, const GridReport* m3,
                                int indent = 2);

// "p/q" or a bare integer "p".
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Shortest decimal that round-trips.
std::string double_to_string(double value);

}  // namespace compdof
