#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mlab/common.hpp"

namespace mlab {

using ParamValue = std::variant<bool, double, std::string>;

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, ParamValue> parameters;
    u64 seed = 0;
    std::string output_dir = ".";
};

using Cell = std::variant<double, std::string>;

struct ResultTable {
    std::string experiment;
    std::string config_hash;
    u64 seed = 0;
    std::string version{kVersion};
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column_index(const std::string& name) const;
};

struct ParamSpec {
    std::string key;
    ParamValue default_value;
    std::string doc;
};

struct PlotSpec {
    std::string x_col;
    std::vector<std::string> y_cols;
    bool logx = false;
    bool logy = false;
};

struct ExperimentInfo {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    PlotSpec plot;
};

const std::vector<ExperimentInfo>& experiment_catalog();

// Canonical FNV-1a hash of (experiment, sorted parameters, seed), hex.
std::string config_hash(const ExperimentConfig& config);

// Runs a named experiment.  Unknown parameter keys or type mismatches raise
// config_error; scale guards surface as unsupported_scale.  Deterministic
// for fixed (config, seed).
ResultTable run_experiment(const ExperimentConfig& config);

// CSV: '#'-prefixed provenance lines, a header row, comma-separated data
// rows, numbers in shortest round-trip form.
void emit_csv(const ResultTable& table, const std::string& path);
ResultTable parse_csv(const std::string& path);

// Self-contained single-plot SVG: one polyline per y column plus legend.
void emit_svg(const ResultTable& table, const std::string& x_col,
              const std::vector<std::string>& y_cols, const std::string& path, bool logx = false,
              bool logy = false);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace mlab
