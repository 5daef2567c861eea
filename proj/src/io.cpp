#include "compdof/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "compdof/error.hpp"

namespace compdof {

using nlohmann::json;

namespace {

json assignment_to_value(const MessageAssignment& a) {
    json doc;
    doc["k"] = a.k;
    doc["m"] = a.m;
    doc["transmit_sets"] = a.transmit_sets;
    return doc;
}

std::string dump(const json& doc, int indent) {
    return doc.dump(indent > 0 ? indent : -1) + "\n";
}

int require_int(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_number_integer())
        throw Error(ErrorKind::Parse,
                    std::string("assignment document: missing integer field \"") + field + "\"");
    return doc[field].get<int>();
}

}  // namespace

MessageAssignment parse_assignment_lenient(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse,
                    "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw Error(ErrorKind::Parse, "assignment document: top level must be an object");

    MessageAssignment a;
    a.k = require_int(doc, "k");
    a.m = require_int(doc, "m");
    if (!doc.contains("transmit_sets") || !doc["transmit_sets"].is_array())
        throw Error(ErrorKind::Parse, "assignment document: \"transmit_sets\" must be an array");
    for (const auto& entry : doc["transmit_sets"]) {
        if (!entry.is_array())
            throw Error(ErrorKind::Parse, "assignment document: each transmit set must be an array");
        std::vector<int> t;
        for (const auto& v : entry) {
            if (!v.is_number_integer())
                throw Error(ErrorKind::Parse,
                            "assignment document: transmit set entries must be integers");
            t.push_back(v.get<int>());
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        a.transmit_sets.push_back(std::move(t));
    }
    return a;
}

MessageAssignment parse_assignment_json(const std::string& text) {
    MessageAssignment a = parse_assignment_lenient(text);
    const ValidationReport report = validate(a);
    if (!report.valid)
        throw Error(ErrorKind::Validation, validation_report_to_json(report, 0));
    return a;
}

std::string assignment_to_json(const MessageAssignment& a, int indent) {
    return dump(assignment_to_value(a), indent);
}

std::string validation_report_to_json(const ValidationReport& report, int indent) {
    json doc;
    doc["valid"] = report.valid;
    doc["violations"] = json::array();
    for (const auto& v : report.violations)
        doc["violations"].push_back({{"index", v.index}, {"rule", v.rule}, {"detail", v.detail}});
    return dump(doc, indent);
}

std::string bound_result_to_json(const BoundResult& result, int indent) {
    json doc;
    doc["value"] = result.value;
    doc["witness"] = result.witness;
    doc["i_min"] = result.i_min;
    doc["mode"] = result.mode;
    return dump(doc, indent);
}

std::string profile_to_csv(const ExpansionProfile& profile) {
    std::ostringstream out;
    out << "i,e_i,candidate\n";
    for (int i = 0; i <= profile.k; ++i)
        out << i << "," << profile.e[i] << "," << std::max(profile.k - i, profile.e[i]) << "\n";
    return out.str();
}

std::string profile_to_json(const ExpansionProfile& profile, int indent) {
    json doc;
    doc["k"] = profile.k;
    doc["e"] = profile.e;
    doc["mode"] = profile.mode == ProfileMode::Exact ? "exact" : "sampled";
    if (profile.mode == ProfileMode::Sampled)
        doc["samples_per_size"] = profile.samples_per_size;
    return dump(doc, indent);
}

std::string certificate_to_json(const CertificateSet& certificate, int indent) {
    json doc;
    doc["kind"] = to_string(certificate.kind);
    doc["set_s"] = certificate.set_s;
    doc["carried"] = certificate.carried;
    doc["implied_bound"] = certificate.implied_bound;
    doc["trace"] = json::array();
    for (const auto& step : certificate.trace.steps)
        doc["trace"].push_back({{"added", step.added}, {"carried_after", step.carried_after}});
    return dump(doc, indent);
}

std::string search_report_to_json(const SearchReport& report, int indent) {
    json doc;
    doc["k"] = report.k;
    doc["m"] = report.m;
    doc["best_value"] = report.best_value;
    doc["best_assignment"] = assignment_to_value(report.best_assignment);
    doc["method"] = report.method == SearchMethod::Exhaustive ? "exhaustive" : "random";
    doc["trials_or_count"] = report.trials_or_count;
    if (report.method == SearchMethod::Random) doc["seed"] = report.seed;
    doc["elapsed_seconds"] = report.elapsed_seconds;
    if (report.method == SearchMethod::Exhaustive) doc["dedup_hits"] = report.dedup_hits;
    return dump(doc, indent);
}

std::string experiment_to_csv(const ExpansionExperiment& experiment) {
    std::ostringstream out;
    out << "trial,success,min_ratio\n";
    const int needed = experiment.k - experiment.subset_size();
    for (int t = 0; t < experiment.trials; ++t) {
        const bool success = experiment.min_covered_per_trial[t] > needed;
        out << t << "," << (success ? 1 : 0) << ","
            << double_to_string(experiment.min_ratio_per_trial[t]) << "\n";
    }
    return out.str();
}

std::string experiment_to_json(const ExpansionExperiment& experiment, int indent) {
    json doc;
    doc["k"] = experiment.k;
    doc["m"] = experiment.m;
    doc["epsilon"] = rational_to_string(experiment.epsilon);
    doc["trials"] = experiment.trials;
    doc["seed"] = experiment.seed;
    doc["successes"] = experiment.successes;
    doc["min_covered_per_trial"] = experiment.min_covered_per_trial;
    doc["min_ratio_per_trial"] = experiment.min_ratio_per_trial;
    return dump(doc, indent);
}

std::string alpha_ratios_to_csv(const std::vector<AlphaRatio>& ratios) {
    std::ostringstream out;
    out << "alpha,i,e_i,ratio\n";
    for (const auto& r : ratios)
        out << rational_to_string(r.alpha) << "," << r.i << "," << r.e_i << ","
            << double_to_string(r.ratio) << "\n";
    return out.str();
}

std::string alpha_ratios_to_json(const std::vector<AlphaRatio>& ratios, int indent) {
    json doc = json::array();
    for (const auto& r : ratios)
        doc.push_back({{"alpha", rational_to_string(r.alpha)},
                       {"i", r.i},
                       {"e_i", r.e_i},
                       {"ratio", r.ratio}});
    return dump(doc, indent);
}

std::string grid_report_to_json(const GridReport& general, const GridReport* m3, int indent) {
    auto one = [](const GridReport& g) {
        json doc;
        doc["cases"] = g.cases;
        doc["all_true"] = g.all_true;
        if (!g.all_true) doc["first_failure"] = g.first_failure;
        return doc;
    };
    json doc;
    doc["general"] = one(general);
    if (m3) doc["m3"] = one(*m3);
    return dump(doc, indent);
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    Rational r;
    try {
        if (slash == std::string::npos) {
            r.num = std::stoll(text);
            r.den = 1;
        } else {
            r.num = std::stoll(text.substr(0, slash));
            r.den = std::stoll(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "cannot parse rational \"" + text + "\" (expected p/q)");
    }
    if (r.den == 0) throw Error(ErrorKind::Parse, "rational \"" + text + "\" has a zero denominator");
    return r;
}

std::string rational_to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
    out << content;
    if (!out) throw Error(ErrorKind::Parse, "write failed for " + path);
}

std::string double_to_string(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

}  // namespace compdof
