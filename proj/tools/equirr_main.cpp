#include "equirr/errors.hpp"
#include "equirr/report.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

// --schur takes repeatable "j=m" pairs with 1-based orbit indices.
std::map<int, long> parse_schur(const std::vector<std::string>& pairs) {
    std::map<int, long> out;
    for (const auto& p : pairs) {
        auto eq = p.find('=');
        if (eq == std::string::npos)
            throw equirr::UsageError("--schur expects j=m, got '" + p + "'");
        try {
            int j = std::stoi(p.substr(0, eq));
            long m = std::stol(p.substr(eq + 1));
            out[j - 1] = m;
        } catch (const equirr::Error&) {
            throw;
        } catch (...) {
            throw equirr::UsageError("--schur expects j=m, got '" + p + "'");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decomposition of group representations on spaces of functions "
                 "with prescribed poles on curves"};
    app.require_subcommand(1);

    std::string job_path;
    std::vector<std::string> schur_pairs;
    equirr::RunFlags flags;
    long max_order = 10000;
    long deg0 = 0;
    bool deg0_set = false;

    auto add_common = [&](CLI::App* cmd, bool needs_job) {
        if (needs_job) cmd->add_option("job", job_path, "job file (JSON)")->required();
        cmd->add_flag("--json", flags.json, "emit the JSON report");
        cmd->add_option("--schur", schur_pairs, "Schur index override j=m (1-based orbit index)");
        cmd->add_flag("--assume-nonspecial", flags.assume_nonspecial,
                      "treat the divisor as nonspecial without the degree guard");
        cmd->add_option("--seed", flags.seed, "seed for randomized verification");
        cmd->add_option("--max-order", max_order, "group size bound");
        return cmd;
    };

    for (const char* name : {"chartab", "subgroups", "genus", "ramification", "eqdeg", "borne"})
        add_common(app.add_subcommand(name), true);
    auto* decompose = add_common(app.add_subcommand("decompose"), true);
    decompose->add_option("--deg0", deg0, "pullback degree deg D0")->each([&](const std::string&) {
        deg0_set = true;
    });
    auto* verify = add_common(app.add_subcommand("verify"), true);
    verify->add_flag("--realizability", flags.realizability,
                     "search for branch cycles realizing the cover");
    auto* examples = add_common(app.add_subcommand("examples"), false);
    examples->add_option("--out", flags.out_dir, "output directory for the bundled jobs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        flags.schur = parse_schur(schur_pairs);
        if (deg0_set) flags.deg0 = deg0;
        const std::string command = app.get_subcommands().front()->get_name();

        equirr::Report report;
        if (command == "examples") {
            report = equirr::run_examples(flags);
        } else {
            equirr::GroupLimits limits;
            limits.max_order = static_cast<std::size_t>(max_order);
            auto job = equirr::parse_job(job_path, limits);
            report = equirr::run(command, *job, flags);
        }
        std::cout << equirr::emit_report(report, flags.json);
        return report.exit_code;
    } catch (const equirr::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const equirr::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const equirr::ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
