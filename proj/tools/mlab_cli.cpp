// mlab CLI: reproducible experiment runner.
//
//   mlab list
//   mlab run <experiment> [--config cfg.json] [--out DIR] [--seed U64]
//            [--set key=value ...]
//
// Config files are flat JSON objects with keys experiment, parameters, seed,
// output_dir.  --set overrides individual parameters.  Exit codes: 0 ok,
// 2 config error, 3 scale-guard refusal, 4 numeric failure.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlab/experiments.hpp"

namespace {

using nlohmann::json;

mlab::ParamValue parse_value(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec == std::errc() && res.ptr == text.data() + text.size()) return v;
    return text;
}

void load_config_file(const std::string& path, mlab::ExperimentConfig& config) {
    std::ifstream in(path);
    if (!in) throw mlab::config_error("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw mlab::config_error(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw mlab::config_error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment") {
            if (!value.is_string()) throw mlab::config_error("'experiment' must be a string");
            std::string name = value.get<std::string>();
            if (!config.experiment.empty() && name != config.experiment)
                throw mlab::config_error("config experiment '" + name +
                                         "' does not match requested '" + config.experiment + "'");
            config.experiment = name;
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !value.is_number_integer())
                throw mlab::config_error("'seed' must be an unsigned integer");
            config.seed = value.get<mlab::u64>();
        } else if (key == "output_dir") {
            if (!value.is_string()) throw mlab::config_error("'output_dir' must be a string");
            config.output_dir = value.get<std::string>();
        } else if (key == "parameters") {
            if (!value.is_object()) throw mlab::config_error("'parameters' must be an object");
            for (const auto& [pk, pv] : value.items()) {
                if (pv.is_boolean())
                    config.parameters[pk] = pv.get<bool>();
                else if (pv.is_number())
                    config.parameters[pk] = pv.get<double>();
                else if (pv.is_string())
                    config.parameters[pk] = pv.get<std::string>();
                else
                    throw mlab::config_error("parameter '" + pk + "' must be number, string or bool");
            }
        } else {
            throw mlab::config_error("unknown top-level config key '" + key + "'");
        }
    }
}

int cmd_list() {
    for (const mlab::ExperimentInfo& e : mlab::experiment_catalog()) {
        std::printf("%s\n    %s\n", e.name.c_str(), e.summary.c_str());
        for (const mlab::ParamSpec& p : e.params) {
            std::string def;
            if (std::holds_alternative<bool>(p.default_value))
                def = std::get<bool>(p.default_value) ? "true" : "false";
            else if (std::holds_alternative<double>(p.default_value))
                def = mlab::format_double(std::get<double>(p.default_value));
            else
                def = std::get<std::string>(p.default_value);
            std::printf("    --set %-14s (default %s) %s\n", p.key.c_str(), def.c_str(),
                        p.doc.c_str());
        }
        std::printf("\n");
    }
    return 0;
}

int cmd_run(const std::string& name, const std::string& config_path, const std::string& out_dir,
            bool have_seed, mlab::u64 seed, const std::vector<std::string>& sets) {
    mlab::ExperimentConfig config;
    config.experiment = name;
    if (!config_path.empty()) load_config_file(config_path, config);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (have_seed) config.seed = seed;
    for (const std::string& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw mlab::config_error("--set expects key=value, got '" + kv + "'");
        config.parameters[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
    }

    mlab::ResultTable table = mlab::run_experiment(config);

    std::filesystem::create_directories(config.output_dir);
    std::string csv = config.output_dir + "/" + config.experiment + ".csv";
    std::string svg = config.output_dir + "/" + config.experiment + ".svg";
    mlab::emit_csv(table, csv);

    const mlab::PlotSpec* plot = nullptr;
    for (const mlab::ExperimentInfo& e : mlab::experiment_catalog())
        if (e.name == config.experiment) plot = &e.plot;
    if (plot && !table.rows.empty())
        mlab::emit_svg(table, plot->x_col, plot->y_cols, svg, plot->logx, plot->logy);

    std::printf("%s: %zu rows (config %s, seed %llu)\n", config.experiment.c_str(),
                table.rows.size(), table.config_hash.c_str(),
                static_cast<unsigned long long>(table.seed));
    std::printf("  wrote %s\n", csv.c_str());
    if (plot && !table.rows.empty()) std::printf("  wrote %s\n", svg.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for prime-weighted polynomial averages"};
    app.require_subcommand(1);

    CLI::App* list = app.add_subcommand("list", "list experiments and their parameters");

    CLI::App* run = app.add_subcommand("run", "run a named experiment");
    std::string name, config_path, out_dir;
    mlab::u64 seed = 0;
    std::vector<std::string> sets;
    run->add_option("experiment", name, "experiment name")->required();
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--out", out_dir, "output directory");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "RNG seed");
    run->add_option("--set", sets, "override parameter, key=value")->take_all();

    try {
        app.parse(argc, argv);
        if (list->parsed()) return cmd_list();
        return cmd_run(name, config_path, out_dir, seed_opt->count() > 0, seed, sets);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mlab::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const mlab::unsupported_scale& e) {
        std::fprintf(stderr, "scale guard: %s\n", e.what());
        return 3;
    } catch (const mlab::numeric_failure& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
