// compdof: DoF upper bounds and message-assignment analysis for the K-user
// fully connected interference channel with CoMP transmission.
//
// One subcommand per library operation; assignments travel as JSON
// documents, profiles and experiments as CSV. Exit codes: 0 success,
// 1 validation failure, 2 parse/IO error, 3 budget exceeded,
// 4 verification failure.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "compdof/certificates.hpp"
#include "compdof/error.hpp"
#include "compdof/expansion.hpp"
#include "compdof/io.hpp"
#include "compdof/search.hpp"
#include "compdof/verify.hpp"

namespace {

using namespace compdof;

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

MessageAssignment load_assignment(const std::string& in_path) {
    return parse_assignment_json(read_file(in_path));
}

std::vector<Rational> parse_alpha_list(const std::string& list) {
    std::vector<Rational> alphas;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string item = list.substr(start, comma - start);
        if (!item.empty()) alphas.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (alphas.empty()) throw Error(ErrorKind::Parse, "empty alpha list");
    return alphas;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DoF upper bounds for CoMP message assignments"};
    app.require_subcommand(1);

    std::string in_path, out_path, format = "json", mode = "exact";
    std::string kind_name = "identity", generator_name = "matching_union";
    std::string alpha_list, epsilon_text, suite_name = "all", variant = "both";
    std::uint64_t seed = 0, max_assignments = 2'000'000;
    int k = 0, m = 0, radius = 0, trials = 0, samples = 64, cap_k = 24;
    int grid_max_k = 0, grid_max_m = 6;
    bool wrap = false, no_dedup = false;

    auto add_io = [&](CLI::App* cmd, bool needs_in) {
        if (needs_in) cmd->add_option("--in", in_path, "input assignment JSON")->required();
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
    };

    auto* cmd_validate = app.add_subcommand("validate", "validate an assignment document");
    add_io(cmd_validate, true);

    auto* cmd_bound = app.add_subcommand("bound", "B = min_S max(|C_S|, K-|S|) with witness");
    add_io(cmd_bound, true);
    cmd_bound->add_option("--mode", mode, "exact|sampled")->check(CLI::IsMember({"exact", "sampled"}));
    cmd_bound->add_option("--samples", samples, "samples per cardinality (sampled mode)");
    cmd_bound->add_option("--seed", seed, "sampling seed");
    cmd_bound->add_option("--cap-k", cap_k, "exact enumeration cap (default 24)");

    auto* cmd_profile = app.add_subcommand("profile", "expansion profile e(0..K)");
    add_io(cmd_profile, true);
    cmd_profile->add_option("--mode", mode, "exact|sampled")->check(CLI::IsMember({"exact", "sampled"}));
    cmd_profile->add_option("--samples", samples, "samples per cardinality (sampled mode)");
    cmd_profile->add_option("--seed", seed, "sampling seed");
    cmd_profile->add_option("--cap-k", cap_k, "exact enumeration cap");
    cmd_profile->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* cmd_certify = app.add_subcommand("certify", "greedy certificate set (m >= 2)");
    add_io(cmd_certify, true);

    auto* cmd_certify_m3 = app.add_subcommand("certify-m3", "two-phase certificate set (m = 3)");
    add_io(cmd_certify_m3, true);

    auto* cmd_generate = app.add_subcommand("generate", "generate an assignment");
    add_io(cmd_generate, false);
    cmd_generate->add_option("--kind", kind_name,
                             "identity|full|successive|local_random|uniform_random|matching_union")
        ->required();
    cmd_generate->add_option("--k", k, "number of users")->required();
    cmd_generate->add_option("--m", m, "cooperation order (defaults to k for full)");
    cmd_generate->add_option("--radius", radius, "window radius (local_random)");
    cmd_generate->add_flag("--wrap", wrap, "wrap the successive window around K");
    cmd_generate->add_option("--seed", seed, "generation seed");

    auto* cmd_search_exact = app.add_subcommand("search-exact", "exact eta_out(k, m)");
    add_io(cmd_search_exact, false);
    cmd_search_exact->add_option("--k", k)->required();
    cmd_search_exact->add_option("--m", m)->required();
    cmd_search_exact->add_flag("--no-dedup", no_dedup, "disable canonical-form dedup");
    cmd_search_exact->add_option("--max-assignments", max_assignments, "enumeration budget");

    auto* cmd_search_random = app.add_subcommand("search-random", "seeded random search for eta_out");
    add_io(cmd_search_random, false);
    cmd_search_random->add_option("--k", k)->required();
    cmd_search_random->add_option("--m", m)->required();
    cmd_search_random->add_option("--trials", trials)->required();
    cmd_search_random->add_option("--seed", seed, "search seed");
    cmd_search_random->add_option("--generator", generator_name, "matching_union|uniform_random");
    cmd_search_random->add_option("--cap-k", cap_k, "exact bound cap");

    auto* cmd_expansion = app.add_subcommand("expansion", "expansion ratios e(round(aK))/round(aK)");
    add_io(cmd_expansion, true);
    cmd_expansion->add_option("--alpha", alpha_list, "comma list of fractions (default 1/8,1/4,3/8,1/2)");
    cmd_expansion->add_option("--cap-k", cap_k, "exact enumeration cap");
    cmd_expansion->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* cmd_epsilon = app.add_subcommand(
        "epsilon", "cooperation-order threshold; with --k/--m/--trials also the matching experiment");
    add_io(cmd_epsilon, false);
    cmd_epsilon->add_option("--epsilon", epsilon_text, "fraction p/q in (0,1)")->required();
    cmd_epsilon->add_option("--k", k, "users (experiment)");
    cmd_epsilon->add_option("--m", m, "matchings per union (experiment)");
    cmd_epsilon->add_option("--trials", trials, "experiment trials");
    cmd_epsilon->add_option("--seed", seed, "experiment seed");
    cmd_epsilon->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* cmd_ineq = app.add_subcommand("ineq-grid", "counting inequalities over the admissible grids");
    add_io(cmd_ineq, false);
    cmd_ineq->add_option("--variant", variant, "general|m3|both")
        ->check(CLI::IsMember({"general", "m3", "both"}));
    cmd_ineq->add_option("--max-k", grid_max_k, "grid limit (default 40 general, 63 m3)");
    cmd_ineq->add_option("--max-m", grid_max_m, "general grid m limit (default 6)");

    auto* cmd_verify = app.add_subcommand("verify", "run the verification checks");
    cmd_verify->add_option("--suite", suite_name, "bounds|certificates|inequalities|expanders|all")
        ->check(CLI::IsMember({"bounds", "certificates", "inequalities", "expanders", "all"}));
    cmd_verify->add_option("--seed", seed, "seed for the randomized checks");
    cmd_verify->add_option("--trials", trials, "override per-check trial counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            const MessageAssignment a = parse_assignment_lenient(read_file(in_path));
            const ValidationReport report = validate(a);
            emit(out_path, validation_report_to_json(report));
            return report.valid ? 0 : 1;
        }

        if (cmd_bound->parsed()) {
            const MessageAssignment a = load_assignment(in_path);
            const ExpansionCaps caps{cap_k};
            const BoundResult result = mode == "exact"
                                           ? dof_upper_bound(a, caps)
                                           : dof_upper_bound_sampled(a, samples, seed);
            emit(out_path, bound_result_to_json(result));
            return 0;
        }

        if (cmd_profile->parsed()) {
            const MessageAssignment a = load_assignment(in_path);
            const ExpansionCaps caps{cap_k};
            const ExpansionProfile profile = expansion_profile(
                a, mode == "exact" ? ProfileMode::Exact : ProfileMode::Sampled, samples, seed, caps);
            emit(out_path, format == "csv" ? profile_to_csv(profile) : profile_to_json(profile));
            return 0;
        }

        if (cmd_certify->parsed()) {
            emit(out_path, certificate_to_json(construct_certificate(load_assignment(in_path))));
            return 0;
        }

        if (cmd_certify_m3->parsed()) {
            emit(out_path, certificate_to_json(construct_certificate_m3(load_assignment(in_path))));
            return 0;
        }

        if (cmd_generate->parsed()) {
            GeneratorSpec spec;
            spec.kind = generator_kind_from_string(kind_name);
            spec.k = k;
            spec.m = m;
            spec.radius = radius;
            spec.wraparound = wrap;
            emit(out_path, assignment_to_json(generate(spec, seed)));
            return 0;
        }

        if (cmd_search_exact->parsed()) {
            SearchBudget budget;
            budget.max_assignments = max_assignments;
            budget.dedup = !no_dedup;
            emit(out_path, search_report_to_json(eta_out_exact(k, m, budget)));
            return 0;
        }

        if (cmd_search_random->parsed()) {
            const ExpansionCaps caps{cap_k};
            emit(out_path,
                 search_report_to_json(eta_out_random(
                     k, m, trials, seed, generator_kind_from_string(generator_name), caps)));
            return 0;
        }

        if (cmd_expansion->parsed()) {
            const MessageAssignment a = load_assignment(in_path);
            const ExpansionCaps caps{cap_k};
            const std::vector<Rational> alphas =
                alpha_list.empty() ? default_alpha_grid() : parse_alpha_list(alpha_list);
            const auto ratios = expansion_ratio(a, alphas, caps);
            emit(out_path,
                 format == "json" ? alpha_ratios_to_json(ratios) : alpha_ratios_to_csv(ratios));
            return 0;
        }

        if (cmd_epsilon->parsed()) {
            const Rational eps = parse_rational(epsilon_text);
            if (k == 0 && m == 0 && trials == 0) {
                const double threshold = epsilon_threshold(eps);
                std::string doc = "{\n  \"epsilon\": \"" + rational_to_string(eps) +
                                  "\",\n  \"threshold\": " + double_to_string(threshold) +
                                  ",\n  \"minimal_cooperation_order\": " +
                                  std::to_string(minimal_cooperation_order(eps)) + "\n}\n";
                emit(out_path, doc);
                return 0;
            }
            if (k == 0 || m == 0 || trials == 0)
                throw Error(ErrorKind::Domain,
                            "epsilon experiment needs --k, --m and --trials together");
            const ExpansionExperiment experiment = epsilon_experiment(k, m, eps, trials, seed);
            emit(out_path, format == "json" ? experiment_to_json(experiment)
                                            : experiment_to_csv(experiment));
            return 0;
        }

        if (cmd_ineq->parsed()) {
            GridReport general, m3;
            const bool run_general = variant != "m3";
            const bool run_m3 = variant != "general";
            if (run_general)
                general = counting_grid_general(grid_max_k > 0 ? grid_max_k : 40, grid_max_m);
            if (run_m3) m3 = counting_grid_m3(grid_max_k > 0 ? grid_max_k : 63);
            if (run_general && run_m3)
                emit(out_path, grid_report_to_json(general, &m3));
            else
                emit(out_path, grid_report_to_json(run_general ? general : m3, nullptr));
            if (!(general.all_true && m3.all_true)) {
                std::cerr << "counting inequality failed: "
                          << (general.all_true ? m3.first_failure : general.first_failure) << "\n";
                return 4;
            }
            return 0;
        }

        if (cmd_verify->parsed()) {
            const VerifyOptions options{seed, trials};
            const auto results = verify_paper(suite_from_string(suite_name), options);
            bool all_pass = true;
            std::string first_failure;
            for (const auto& r : results) {
                std::printf("%s %-26s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.observed.c_str(), r.elapsed_seconds);
                if (!r.pass && all_pass) {
                    all_pass = false;
                    first_failure = r.name;
                }
            }
            if (!all_pass) {
                std::cerr << "first failing check: " << first_failure << "\n";
                return 4;
            }
            return 0;
        }
    } catch (const SearchBudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.partial) std::cout << search_report_to_json(*e.partial);
        return e.exit_code();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
