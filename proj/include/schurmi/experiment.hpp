#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schurmi/dataset.hpp"
#include "schurmi/kernel.hpp"
#include "schurmi/objectives.hpp"

namespace schurmi {

enum class Optimizer { kGreedy, kLazy };

struct RunConfig {
    /// CSV path; empty selects the synthetic generator.
    std::string dataset;
    Index synthetic_m = 1000;
    HyperParams synthetic_params{1.0, 0.2, 0.01};

    ObjectiveKind objective = ObjectiveKind::kSchurMI;
    Optimizer optimizer = Optimizer::kLazy;
    std::vector<Index> s_values{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    Index n_train = 300;
    Index n_candidates = 200;
    Index n_test = 500;
    std::uint64_t seed = 0;
    std::optional<double> sigma_surrogate;

    /// Fixed values, or the starting point when fit_hyperparams is set.
    HyperParams hyperparams{1.0, 0.2, 0.01};
    bool fit_hyperparams = false;
    int max_fit_evals = 200;
    FitBounds fit_bounds{};

    int repeats = 1;
    bool precompute = true;
    bool noise_in_diag = true;
    bool standardize = true;

    /// Throws InvalidInput on inconsistent fields (dataset size checks happen
    /// in run_experiment once the dataset is known).
    void validate() const;
};

/// Parses a config document; unknown keys are rejected, missing keys keep
/// their defaults. Throws InvalidInput on type or value errors.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);

struct RunRecord {
    Index s = 0;
    int repeat = 0;
    std::vector<Index> selected;  // dataset row indices, selection order
    double objective = 0.0;
    double mi_standard = 0.0;     // Standard-MI I(A; V \ A) of the selection
    double smse = 0.0;
    double rmse = 0.0;
    std::int64_t evals = 0;
    double cache_seconds = 0.0;
    double selection_seconds = 0.0;
};

struct RunReport {
    RunConfig config;
    std::string dataset_name;
    std::vector<HyperParams> hyperparams;  // one per repeat
    std::vector<RunRecord> records;        // ordered by repeat, then s
    std::vector<std::string> warnings;
};

RunReport run_experiment(const RunConfig& config);

/// Report schema: {config, dataset, objective_definition, hyperparams[],
/// records[], timing_summary[], warnings[]}. Timings live only in the
/// records' cache_s/select_s and in timing_summary.
nlohmann::json report_to_json(const RunReport& report);
/// Removes every timing field; the remainder is deterministic per config.
nlohmann::json strip_timings(nlohmann::json report);
/// Flat table: s,repeat,objective,mi_standard,smse,rmse,evals,cache_s,select_s
std::string report_to_csv(const RunReport& report);

}  // namespace schurmi
