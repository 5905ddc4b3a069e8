// Benchmark / experiment driver over the schurmi C API.
//
//   schurmi-bench --synthetic 1000 --objective schur_mi --s 5:50:5 --out run
//   schurmi-bench --config run.json --optimizer greedy
//   schurmi-bench --verify --trials 200 --seed 7
//
// Exit codes: 0 success, 1 verify or run failure, 2 usage/parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schurmi/schurmi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// "5,10,20" or "lo:hi:step" (inclusive)
std::vector<long long> parse_s_values(const std::string& text) {
    std::vector<long long> out;
    if (text.find(':') != std::string::npos) {
        long long lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || hi < lo) {
            throw std::invalid_argument("bad s range '" + text + "', expected lo:hi:step");
        }
        for (long long s = lo; s <= hi; s += step) out.push_back(s);
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad s value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty s list");
    return out;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int report_error(smi_status status) {
    std::cerr << "error: " << smi_status_string(status) << ": " << smi_last_error() << '\n';
    const bool usage = status == SMI_ERR_INVALID_INPUT || status == SMI_ERR_PARSE;
    return usage ? kExitUsage : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mutual-information sensor placement benchmarks"};
    std::string config_path, dataset, objective, optimizer, s_text, out_prefix;
    std::optional<std::uint64_t> seed;
    std::optional<long long> synthetic_m, repeats;
    int trials = 100;
    bool verify = false;
    bool fit = false;

    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--dataset", dataset, "CSV dataset with header x,y,value");
    app.add_option("--objective", objective, "standard_mi | schur_mi | a_opt | b_opt | d_opt");
    app.add_option("--optimizer", optimizer, "greedy | lazy");
    app.add_option("--s", s_text, "sensor counts: comma list or lo:hi:step");
    app.add_option("--seed", seed, "experiment seed");
    app.add_option("--out", out_prefix, "write <prefix>.json and <prefix>.csv instead of printing JSON");
    app.add_option("--synthetic", synthetic_m, "use a synthetic GP field with this many samples");
    app.add_option("--repeats", repeats, "number of random splits");
    app.add_flag("--fit", fit, "fit hyperparameters on the training split");
    app.add_flag("--verify", verify, "run the randomized self-check suite instead of an experiment");
    app.add_option("--trials", trials, "instances per verify check")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (verify) {
        smi_report* report = nullptr;
        int passed = 0;
        const smi_status st = smi_verify(seed.value_or(0), trials, &report, &passed);
        if (st != SMI_OK) return report_error(st);
        const std::string text = smi_report_json(report);
        smi_report_destroy(report);
        if (!out_prefix.empty()) {
            if (!write_file(out_prefix + ".json", text + "\n")) {
                std::cerr << "error: cannot write " << out_prefix << ".json\n";
                return kExitFailure;
            }
        } else {
            std::cout << text << '\n';
        }
        std::cerr << (passed ? "verify: all checks passed\n" : "verify: FAILED\n");
        return passed ? kExitOk : kExitFailure;
    }

    nlohmann::json config = nlohmann::json::object();
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            config = nlohmann::json::parse(in);
            if (!config.is_object()) throw std::invalid_argument("config file must hold a JSON object");
        }
        if (!dataset.empty()) config["dataset"] = dataset;
        if (synthetic_m) {
            config["dataset"] = nullptr;
            config["synthetic_m"] = *synthetic_m;
        }
        if (!objective.empty()) config["objective"] = objective;
        if (!optimizer.empty()) config["optimizer"] = optimizer;
        if (!s_text.empty()) config["s_values"] = parse_s_values(s_text);
        if (seed) config["seed"] = *seed;
        if (repeats) config["repeats"] = *repeats;
        if (fit) config["fit_hyperparams"] = true;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    smi_report* report = nullptr;
    const smi_status st = smi_run_experiment(config.dump().c_str(), &report);
    if (st != SMI_OK) return report_error(st);
    const std::string json_text = smi_report_json(report);
    const std::string csv_text = smi_report_csv(report);
    smi_report_destroy(report);

    if (out_prefix.empty()) {
        std::cout << json_text << '\n';
        return kExitOk;
    }
    if (!write_file(out_prefix + ".json", json_text + "\n") || !write_file(out_prefix + ".csv", csv_text)) {
        std::cerr << "error: cannot write report files under " << out_prefix << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
