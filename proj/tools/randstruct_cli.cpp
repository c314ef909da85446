// Command-line runner for the experiment registry and the acceptance suite.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 resource.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randstruct/errors.hpp"
#include "randstruct/experiments.hpp"
#include "randstruct/graphs.hpp"
#include "randstruct/growth.hpp"
#include "randstruct/perms.hpp"
#include "randstruct/trees.hpp"
#include "randstruct/verify.hpp"

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3;

rs::ParamMap parse_params(const std::vector<std::string>& kvs) {
    rs::ParamMap out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw rs::InvalidParameter("--param expects key=value, got '" + kv + "'");
        const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != val.size()) throw rs::InvalidParameter("--param " + key + ": not a number: '" + val + "'");
        out[key] = v;
    }
    return out;
}

void print_list(std::ostream& os) {
    for (const auto& e : rs::experiment_registry()) {
        os << e.name << "  " << e.description << "  (default reps " << e.default_reps << ")\n";
        for (const auto& p : e.params)
            os << "    " << p.name << (p.integer ? " int" : " real") << " = " << rs::format_number(p.default_value) << "  "
               << p.help << '\n';
    }
}

// "<dir>/<stem>_reps.csv" next to the summary file.
std::filesystem::path reps_path(const std::filesystem::path& out) {
    auto p = out;
    p.replace_filename(out.stem().string() + "_reps.csv");
    return p;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) throw rs::InvalidParameter("cannot open output file " + p.string());
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded experiments on random discrete structures"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rs::kLibraryVersion));

    auto* list = app.add_subcommand("list", "List experiments with their parameters");

    auto* run = app.add_subcommand("run", "Run one experiment and write its report");
    std::string experiment, out, format = "csv";
    std::vector<std::string> params;
    std::uint64_t seed = 1;
    std::int64_t reps = 0;
    int workers = 1;
    bool per_rep = false;
    run->add_option("--experiment,-e", experiment, "Experiment name (see list)")->required();
    run->add_option("--param,-p", params, "key=value override, repeatable");
    run->add_option("--seed", seed, "Master seed")->envname("RANDSTRUCT_SEED");
    run->add_option("--reps", reps, "Replicates (default: experiment's own)")->check(CLI::PositiveNumber);
    run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--out,-o", out, "Summary file path (stdout when absent)");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--per-rep", per_rep, "Also write per-replicate rows");

    auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
    std::string suite = "fast";
    std::uint64_t vseed = 20240501;
    std::vector<int> only;
    int vworkers = 1;
    verify->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--seed", vseed, "Master seed")->envname("RANDSTRUCT_SEED");
    verify->add_option("--only", only, "Criterion ids to run");
    verify->add_option("--workers", vworkers, "Worker threads")->check(CLI::PositiveNumber);

    auto* dump = app.add_subcommand("dump", "Sample structures and print them in their text formats");
    std::string kind;
    std::int64_t size = 10, count = 1;
    double prob = 0.5;
    std::uint64_t dseed = 1;
    dump->add_option("--kind", kind, "bgw-tree, gnp, perm, rrt or ba")
        ->required()
        ->check(CLI::IsMember({"bgw-tree", "gnp", "perm", "rrt", "ba"}));
    dump->add_option("--n", size, "Size: tree vertices (0 for a free BGW tree), graph vertices, points or added vertices")->check(CLI::NonNegativeNumber);
    dump->add_option("--p", prob, "Edge probability (gnp) or geometric parameter (bgw-tree)");
    dump->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
    dump->add_option("--seed", dseed, "Master seed")->envname("RANDSTRUCT_SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*list) {
            print_list(std::cout);
            return kOk;
        }
        if (*run) {
            rs::ExperimentConfig cfg{experiment, parse_params(params), seed, reps, workers};
            auto report = rs::run_experiment(cfg);
            const bool json = format == "json";
            if (out.empty()) {
                if (json) rs::write_json(std::cout, report, per_rep);
                else {
                    rs::write_summary_csv(std::cout, report);
                    if (per_rep) rs::write_reps_csv(std::cout, report);
                }
            } else {
                auto f = open_out(out);
                if (json) rs::write_json(f, report, per_rep);
                else rs::write_summary_csv(f, report);
                if (per_rep && !json) {
                    auto r = open_out(reps_path(out));
                    rs::write_reps_csv(r, report);
                }
            }
            for (const auto& v : report.summary.verdicts)
                std::cerr << (v.pass ? "pass " : "FAIL ") << v.name << "  " << v.detail << '\n';
            std::cerr << "wall clock " << report.wall_seconds << " s\n";
            return kOk;
        }
        if (*verify) {
            rs::VerifyOptions opts;
            opts.suite = suite == "full" ? rs::Suite::full : rs::Suite::fast;
            opts.seed = vseed;
            opts.only = only;
            opts.workers = vworkers;
            auto results = rs::run_verification(opts, [](const rs::CriterionResult& r) {
                rs::write_verdict_line(std::cout, r);
                std::cout.flush();
            });
            bool ok = true;
            for (const auto& r : results) ok = ok && r.pass;
            std::cout << (ok ? "all criteria passed" : "verification FAILED") << '\n';
            return ok ? kOk : kVerifyFailed;
        }
        if (*dump) {
            for (std::int64_t i = 0; i < count; ++i) {
                auto rng = rs::make_stream(dseed, static_cast<std::uint64_t>(i));
                if (kind == "bgw-tree") {
                    const auto law = rs::OffspringLaw::geometric(prob);
                    if (size > 0) {
                        rs::write_plane_tree(std::cout, rs::sample_bgw_conditioned(law, size, rng));
                    } else {
                        // Free tree: retries draws that hit the vertex cap so every line is finite.
                        std::optional<rs::PlaneTree> t;
                        while (!t) t = rs::sample_bgw(law, rng);
                        rs::write_plane_tree(std::cout, *t);
                    }
                } else if (kind == "gnp") {
                    rs::write_graph(std::cout, rs::sample_gnp(size, prob, rng));
                } else if (kind == "perm") {
                    rs::write_permutation(std::cout, rs::sample_perm(size, rng));
                } else if (kind == "rrt") {
                    rs::write_growing_tree(std::cout, rs::rrt_chain(size, rng));
                } else {
                    rs::write_growing_tree(std::cout, rs::ba_chain(size, rng));
                }
            }
            return kOk;
        }
    } catch (const rs::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kResource;
    } catch (const std::invalid_argument& e) {
        // InvalidParameter, InvalidTest and FormatError all land here.
        std::cerr << "error: " << e.what() << '\n';
        if (*run && experiment.size()) std::cerr << "run 'randstruct list' for experiments and parameters\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    }
    return kUsage;
}
