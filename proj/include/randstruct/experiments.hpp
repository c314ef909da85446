#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randstruct/rng.hpp"

namespace rs {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct ParamSpec {
    std::string name;
    bool integer = false;
    double default_value = 0.0;
    std::string help;
};

using ParamMap = std::map<std::string, double>;

struct RepResult {
    std::vector<double> values;  // aligned with ExperimentInfo::columns
    std::vector<double> curve;   // aligned with the experiment's curve grid, may be empty
};

struct SummaryRow {
    std::string quantity;
    std::optional<double> x;  // abscissa for curves and histograms
    double value = 0.0;
    std::optional<double> lo, hi;
    std::optional<double> reference;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Summary {
    std::vector<SummaryRow> rows;
    std::vector<Verdict> verdicts;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<ParamSpec> params;
    std::vector<std::string> columns;
    std::int64_t default_reps = 100;
    std::function<RepResult(const ParamMap&, RngStream&)> run_rep;
    std::function<Summary(const ParamMap&, const std::vector<RepResult>&)> summarize;
};

const std::vector<ExperimentInfo>& experiment_registry();
// Throws InvalidParameter listing the known names when absent.
const ExperimentInfo& find_experiment(const std::string& name);

struct ExperimentConfig {
    std::string experiment;
    ParamMap params;  // user overrides; defaults filled by resolve_params
    std::uint64_t seed = 0;
    std::int64_t reps = 0;  // 0 selects the experiment's default
    int workers = 1;
};

// Defaults merged with overrides. Throws InvalidParameter on unknown names or
// non-integral values for integer parameters.
ParamMap resolve_params(const ExperimentInfo& info, const ParamMap& overrides);

struct Report {
    ExperimentConfig config;
    ParamMap params;  // resolved
    std::vector<std::string> columns;
    std::vector<RepResult> reps;
    Summary summary;
    double wall_seconds = 0.0;
    bool all_pass() const;
};

// Replicate r uses make_stream(seed, r); results are merged in replicate order.
Report run_experiment(const ExperimentConfig& cfg);

// Runs f(r) for r in [0, count) on up to `workers` threads.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& f);

// "# key=value" comment lines describing the config (workers excluded).
void write_config_comment(std::ostream& os, const Report& r);
void write_summary_csv(std::ostream& os, const Report& r);
void write_reps_csv(std::ostream& os, const Report& r);
void write_json(std::ostream& os, const Report& r, bool include_reps);

// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace rs
