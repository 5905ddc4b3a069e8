#include "schurmi/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "schurmi/error.hpp"
#include "schurmi/gp.hpp"
#include "schurmi/mi.hpp"
#include "schurmi/select.hpp"

namespace schurmi {
namespace {

using nlohmann::json;

const char* to_string(Optimizer o) { return o == Optimizer::kLazy ? "lazy" : "greedy"; }

Optimizer parse_optimizer(const std::string& name) {
    if (name == "greedy") return Optimizer::kGreedy;
    if (name == "lazy") return Optimizer::kLazy;
    throw InvalidInput("unknown optimizer '" + name + "' (expected greedy or lazy)");
}

json params_to_json(const HyperParams& p) {
    return json{{"signal_variance", p.signal_variance},
                {"length_scale", p.length_scale},
                {"noise_variance", p.noise_variance}};
}

HyperParams params_from_json(const json& j, HyperParams out) {
    if (!j.is_object()) throw InvalidInput("hyperparameters must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw InvalidInput("hyperparameter '" + key + "' must be a number");
        if (key == "signal_variance") out.signal_variance = value.get<double>();
        else if (key == "length_scale") out.length_scale = value.get<double>();
        else if (key == "noise_variance") out.noise_variance = value.get<double>();
        else throw InvalidInput("unknown hyperparameter '" + key + "'");
    }
    return out;
}

json interval_to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

Interval interval_from_json(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidInput("fit bound '" + key + "' must be [lo, hi]");
    }
    return Interval{j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T get_as(const json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("config key '" + key + "' has the wrong type");
    }
}

Index get_count(const json& value, const std::string& key) {
    if (!value.is_number_integer()) throw InvalidInput("config key '" + key + "' must be an integer");
    return value.get<Index>();
}

// Fisher-Yates with an explicit uniform draw so the permutation does not
// depend on the standard library's shuffle implementation.
std::vector<Index> permutation(Index n, std::mt19937_64& rng) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Index>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
}

std::string objective_definition(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::kStandardMI: return "I(A; V\\A) = 1/2 [ln det K_AA + ln det K_(V\\A) - ln det K_VV]";
        case ObjectiveKind::kSchurMI: return "I(A; V) = 1/2 [ln det K_AA - ln det K_A|V], A drawn from the surrogate G = V + eps";
        case ObjectiveKind::kAOpt: return "a_opt (artifact definition) = -trace(S), S = K_VV - K_VA (K_AA + noise I)^-1 K_AV";
        case ObjectiveKind::kBOpt: return "b_opt (artifact definition) = trace(K_VA (K_AA + noise I)^-1 K_AV)";
        case ObjectiveKind::kDOpt: return "d_opt (artifact definition) = -ln det(S + jitter I), S = posterior covariance of V given A";
    }
    return "";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void RunConfig::validate() const {
    synthetic_params.validate();
    if (dataset.empty() && synthetic_m < 3) throw InvalidInput("synthetic_m must be >= 3");
    if (s_values.empty()) throw InvalidInput("s_values must be nonempty");
    for (Index s : s_values) {
        if (s < 1 || s > n_candidates) throw InvalidInput("every s must lie in [1, n_candidates]");
    }
    if (n_candidates < 1 || n_test < 1) throw InvalidInput("n_candidates and n_test must be >= 1");
    if (n_train < 2 && fit_hyperparams) throw InvalidInput("n_train must be >= 2 when fitting hyperparameters");
    if (repeats < 1) throw InvalidInput("repeats must be >= 1");
    if (max_fit_evals < 1) throw InvalidInput("max_fit_evals must be >= 1");
    if (sigma_surrogate && !(*sigma_surrogate >= 0.0)) throw InvalidInput("sigma_surrogate must be >= 0");
    hyperparams.validate();
}

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw InvalidInput("config must be a JSON object");
    RunConfig c;
    for (const auto& [key, value] : doc.items()) {
        if (key == "dataset") {
            c.dataset = value.is_null() ? std::string{} : get_as<std::string>(value, key);
        } else if (key == "synthetic_m") {
            c.synthetic_m = get_count(value, key);
        } else if (key == "synthetic_params") {
            c.synthetic_params = params_from_json(value, c.synthetic_params);
        } else if (key == "objective") {
            c.objective = parse_objective_kind(get_as<std::string>(value, key));
        } else if (key == "optimizer") {
            c.optimizer = parse_optimizer(get_as<std::string>(value, key));
        } else if (key == "s_values") {
            if (!value.is_array()) throw InvalidInput("s_values must be an array of integers");
            c.s_values.clear();
            for (const auto& s : value) c.s_values.push_back(get_count(s, key));
        } else if (key == "n_train") {
            c.n_train = get_count(value, key);
        } else if (key == "n_candidates") {
            c.n_candidates = get_count(value, key);
        } else if (key == "n_test") {
            c.n_test = get_count(value, key);
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
                throw InvalidInput("seed must be a nonnegative integer");
            }
            c.seed = value.get<std::uint64_t>();
        } else if (key == "sigma_surrogate") {
            if (value.is_null()) c.sigma_surrogate.reset();
            else c.sigma_surrogate = get_as<double>(value, key);
        } else if (key == "hyperparams") {
            c.hyperparams = params_from_json(value, c.hyperparams);
        } else if (key == "fit_hyperparams") {
            c.fit_hyperparams = get_as<bool>(value, key);
        } else if (key == "max_fit_evals") {
            c.max_fit_evals = static_cast<int>(get_count(value, key));
        } else if (key == "fit_bounds") {
            if (!value.is_object()) throw InvalidInput("fit_bounds must be an object");
            for (const auto& [name, iv] : value.items()) {
                if (name == "signal_variance") c.fit_bounds.signal_variance = interval_from_json(iv, name);
                else if (name == "length_scale") c.fit_bounds.length_scale = interval_from_json(iv, name);
                else if (name == "noise_variance") c.fit_bounds.noise_variance = interval_from_json(iv, name);
                else throw InvalidInput("unknown fit bound '" + name + "'");
            }
        } else if (key == "repeats") {
            c.repeats = static_cast<int>(get_count(value, key));
        } else if (key == "precompute") {
            c.precompute = get_as<bool>(value, key);
        } else if (key == "noise_in_diag") {
            c.noise_in_diag = get_as<bool>(value, key);
        } else if (key == "standardize") {
            c.standardize = get_as<bool>(value, key);
        } else {
            throw InvalidInput("unknown config key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["dataset"] = c.dataset.empty() ? json(nullptr) : json(c.dataset);
    j["synthetic_m"] = c.synthetic_m;
    j["synthetic_params"] = params_to_json(c.synthetic_params);
    j["objective"] = std::string(to_string(c.objective));
    j["optimizer"] = to_string(c.optimizer);
    j["s_values"] = c.s_values;
    j["n_train"] = c.n_train;
    j["n_candidates"] = c.n_candidates;
    j["n_test"] = c.n_test;
    j["seed"] = c.seed;
    j["sigma_surrogate"] = c.sigma_surrogate ? json(*c.sigma_surrogate) : json(nullptr);
    j["hyperparams"] = params_to_json(c.hyperparams);
    j["fit_hyperparams"] = c.fit_hyperparams;
    j["max_fit_evals"] = c.max_fit_evals;
    j["fit_bounds"] = json{{"signal_variance", interval_to_json(c.fit_bounds.signal_variance)},
                           {"length_scale", interval_to_json(c.fit_bounds.length_scale)},
                           {"noise_variance", interval_to_json(c.fit_bounds.noise_variance)}};
    j["repeats"] = c.repeats;
    j["precompute"] = c.precompute;
    j["noise_in_diag"] = c.noise_in_diag;
    j["standardize"] = c.standardize;
    return j;
}

RunReport run_experiment(const RunConfig& config) {
    config.validate();
    const Dataset data = config.dataset.empty() ? make_synthetic(config.seed, config.synthetic_m, config.synthetic_params)
                                                : load_dataset(config.dataset, config.standardize);
    const Index n = data.size();
    if (config.n_candidates + config.n_test > n) {
        throw InvalidInput("n_candidates + n_test = " + std::to_string(config.n_candidates + config.n_test) +
                           " exceeds dataset size " + std::to_string(n));
    }

    RunReport report;
    report.config = config;
    report.dataset_name = data.name;
    const ObjectiveSpec spec{config.objective, config.precompute, config.noise_in_diag};

    for (int rep = 0; rep < config.repeats; ++rep) {
        const std::uint64_t stream = config.seed + static_cast<std::uint64_t>(rep);
        std::mt19937_64 rng(stream);
        const std::vector<Index> perm = permutation(n, rng);
        const std::vector<Index> cand(perm.begin(), perm.begin() + config.n_candidates);
        const std::vector<Index> test(perm.begin() + config.n_candidates,
                                      perm.begin() + config.n_candidates + config.n_test);

        // training rows: a seeded sample of everything outside the test split
        std::vector<Index> pool(perm.begin(), perm.begin() + config.n_candidates);
        pool.insert(pool.end(), perm.begin() + config.n_candidates + config.n_test, perm.end());
        std::vector<Index> train;
        for (Index k : permutation(static_cast<Index>(pool.size()), rng)) {
            if (static_cast<Index>(train.size()) >= config.n_train) break;
            train.push_back(pool[static_cast<std::size_t>(k)]);
        }

        const PointSet v = data.points.subset(cand);
        const PointSet test_x = data.points.subset(test);
        const Vector test_y = data.values(test);
        const Vector cand_y = data.values(cand);
        const double test_var = population_variance(test_y);

        HyperParams params = config.hyperparams;
        if (config.fit_hyperparams) {
            HyperParams init = params;
            init.signal_variance = std::clamp(init.signal_variance, config.fit_bounds.signal_variance.lo,
                                              config.fit_bounds.signal_variance.hi);
            init.length_scale = std::clamp(init.length_scale, config.fit_bounds.length_scale.lo,
                                           config.fit_bounds.length_scale.hi);
            init.noise_variance = std::clamp(init.noise_variance, config.fit_bounds.noise_variance.lo,
                                             config.fit_bounds.noise_variance.hi);
            params = fit_hyperparams(data.points.subset(train), data.values(train), init, config.fit_bounds,
                                     config.max_fit_evals);
        }
        report.hyperparams.push_back(params);

        const MICache scoring(v, params, std::nullopt, CacheOptions{config.noise_in_diag});

        for (Index s : config.s_values) {
            try {
                SelectOptions opts;
                opts.sigma = config.sigma_surrogate;
                opts.seed = stream;
                opts.lazy = config.optimizer == Optimizer::kLazy;
                const SelectionResult sel = select_sensors(v, params, spec, s, opts);
                for (const std::string& w : sel.warnings) {
                    if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) {
                        report.warnings.push_back(w);
                    }
                }

                RunRecord rec;
                rec.s = s;
                rec.repeat = rep;
                for (Index i : sel.order) rec.selected.push_back(cand[static_cast<std::size_t>(i)]);
                rec.objective = sel.objective_trajectory.back();
                rec.mi_standard = standard_mi(sel.order, scoring, true);
                const Posterior post = posterior(params, v.subset(sel.order), cand_y(sel.order), test_x);
                const Metrics m = metrics(post, test_y, test_var);
                rec.smse = m.smse;
                rec.rmse = m.rmse;
                rec.evals = sel.eval_count;
                rec.cache_seconds = sel.cache_build_time;
                rec.selection_seconds = sel.selection_time;
                report.records.push_back(std::move(rec));
            } catch (const Error& e) {
                throw Error(e.code(), "s=" + std::to_string(s) + " repeat=" + std::to_string(rep) + ": " + e.what());
            }
        }
    }
    return report;
}

json report_to_json(const RunReport& r) {
    json j;
    j["config"] = config_to_json(r.config);
    j["dataset"] = r.dataset_name;
    j["objective_definition"] = objective_definition(r.config.objective);
    j["hyperparams"] = json::array();
    for (const HyperParams& p : r.hyperparams) j["hyperparams"].push_back(params_to_json(p));

    j["records"] = json::array();
    std::map<Index, std::pair<double, double>> fastest;  // s -> (min cache, min select)
    for (const RunRecord& rec : r.records) {
        j["records"].push_back(json{{"s", rec.s},
                                    {"repeat", rec.repeat},
                                    {"selected", rec.selected},
                                    {"objective", rec.objective},
                                    {"mi_standard", rec.mi_standard},
                                    {"smse", rec.smse},
                                    {"rmse", rec.rmse},
                                    {"evals", rec.evals},
                                    {"cache_s", rec.cache_seconds},
                                    {"select_s", rec.selection_seconds}});
        auto [it, fresh] = fastest.try_emplace(rec.s, rec.cache_seconds, rec.selection_seconds);
        if (!fresh) {
            it->second.first = std::min(it->second.first, rec.cache_seconds);
            it->second.second = std::min(it->second.second, rec.selection_seconds);
        }
    }
    j["timing_summary"] = json::array();
    for (const auto& [s, t] : fastest) {
        j["timing_summary"].push_back(json{{"s", s}, {"min_cache_s", t.first}, {"min_select_s", t.second}});
    }
    j["warnings"] = r.warnings;
    return j;
}

json strip_timings(json report) {
    report.erase("timing_summary");
    if (report.contains("records")) {
        for (auto& rec : report["records"]) {
            rec.erase("cache_s");
            rec.erase("select_s");
        }
    }
    return report;
}

std::string report_to_csv(const RunReport& r) {
    std::ostringstream out;
    out << "s,repeat,objective,mi_standard,smse,rmse,evals,cache_s,select_s\n";
    for (const RunRecord& rec : r.records) {
        out << rec.s << ',' << rec.repeat << ',' << fmt(rec.objective) << ',' << fmt(rec.mi_standard) << ','
            << fmt(rec.smse) << ',' << fmt(rec.rmse) << ',' << rec.evals << ',' << fmt(rec.cache_seconds) << ','
            << fmt(rec.selection_seconds) << '\n';
    }
    return out.str();
}

}  // namespace schurmi
