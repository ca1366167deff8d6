#pragma once

// Experiment runner: frequency tables of real-solution counts over sampled
// instances, with deterministic per-trial seeding, resumable persistence, and
// CSV/JSON reporting.

#include "wronskit/util.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wronskit {

enum class Scenario {
    wronski_reality,
    clustered,
    monotone_fourlines,
    secant_fourlines,
    zmatrix_sample,
    gaudin_checks,
};

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// closed arcs on the real line, one per secant flag, two points drawn in each
struct SecantScenario {
    std::vector<std::pair<double, double>> arcs;
    std::vector<std::vector<double>> points;  // drawn points per flag
};

// number of points of each flag lying inside arcs of other flags, summed;
// zero exactly when the arcs are pairwise disjoint
int overlap_number(const SecantScenario& sc);

struct ExperimentConfig {
    Scenario scenario = Scenario::wronski_reality;
    int n = 1, d = 3;
    long trials = 100;
    std::uint64_t seed = 1;
    double root_lo = -2.0, root_hi = 2.0;
    double min_gap = 1e-2;
    double ratio = 10.0;       // clustered configurations
    int zsize = 2;             // zmatrix sampling
    std::vector<std::pair<double, double>> arcs;  // secant scenario; defaults chosen when empty
    unsigned workers = 0;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct TrialRecord {
    long index = 0;
    std::string klass;       // ordering word, overlap class, or scenario tag
    int found = 0;
    int real_count = 0;
    bool complete = false;
    double residual_max = 0;
    double wall_ms = 0;
    nlohmann::json params;   // values drawn for the trial
};

struct ExperimentRecord {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;

    // (class, real count) -> occurrences
    std::map<std::string, std::map<int, long>> table() const;
};

// Runs the configured trials. When out_dir is nonempty, completed trials are
// streamed to out_dir/records.jsonl and already-recorded trials are not rerun.
ExperimentRecord run_experiment(const ExperimentConfig& config, const std::string& out_dir = "");

// results.csv (layout per scenario), cells.csv (one row per cell), results.json
void write_reports(const ExperimentRecord& record, const std::string& out_dir);

std::string render_csv(const ExperimentRecord& record);

}  // namespace wronskit
