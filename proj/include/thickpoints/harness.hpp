#pragma once
// Experiment configuration, seeded parallel replication, aggregation and
// file outputs. JSON is the canonical report format; CSV and SVG are derived
// views. Reports are byte-identical across thread counts for a fixed master
// seed: per-replica work is seeded by mix_seed(master, index), results are
// reduced in index order, and anything thread- or clock-dependent lives in
// the "timing" section only.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "thickpoints/spectra.hpp"

namespace thick {

using json = nlohmann::json;

// Error taxonomy mapped to CLI exit codes 2/3/4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t master_seed = 20010505;
    int replicas = 1;
    int threads = 0; // 0 = auto
    std::map<std::string, std::string> params;
    std::string out_dir = ".";
    std::set<std::string> formats{"json"};
};

// Flat key = value file with dotted keys (experiment.name, param.b,
// sweep.R = 25,50,100). '#' starts a comment.
ExperimentConfig load_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct MetricRow {
    std::vector<double> sweep; // values of the sweep parameters, may be empty
    std::string metric;
    double value = 0.0;
    double stderr_ = 0.0;
    int n_replicas = 0;
};

struct Report {
    ExperimentConfig config;
    std::vector<std::string> sweep_names;
    std::vector<MetricRow> rows;
    std::vector<json> replica_records; // index order
    std::vector<SpectrumCurve> curves;
    std::map<std::string, std::string> notes;
    double wall_seconds = 0.0; // timing section only
    int threads_used = 1;
};

// Parameter schema; names are validated before any work starts.
struct ParamSpec {
    std::string name;
    std::string type; // "f64", "u64", "int", "str", "f64_list"
    std::string default_value;
    std::string help;
};

struct Experiment {
    std::string name;
    std::vector<ParamSpec> schema;
    std::function<void(const ExperimentConfig&, const class ParamReader&, Report&)> run;
};

const std::vector<Experiment>& experiment_registry();
const Experiment* find_experiment(const std::string& name);

// Typed access to validated parameters.
class ParamReader {
  public:
    ParamReader(const ExperimentConfig& cfg, const std::vector<ParamSpec>& schema);

    double f64(const std::string& name) const;
    std::uint64_t u64(const std::string& name) const;
    int integer(const std::string& name) const;
    std::string str(const std::string& name) const;
    std::vector<double> f64_list(const std::string& name) const;

  private:
    const std::string& raw(const std::string& name) const;
    std::map<std::string, std::string> values_;
};

// Runs the named experiment; validates config, fills the report, and writes
// the requested formats into config.out_dir.
Report run_experiment(const ExperimentConfig& cfg);

// Executes fn(seed, index) for index = 0..replicas-1 under OpenMP, gathering
// JSON records in index order. Individual failures are recorded, not fatal,
// unless every replica fails.
std::vector<json> replicate(const std::function<json(std::uint64_t, int)>& fn, int replicas,
                            std::uint64_t master_seed, int threads,
                            std::vector<std::string>* failures = nullptr);

// Canonical serializations.
json report_to_json(const Report& report, bool include_timing = true);
std::string report_to_csv(const Report& report);
std::string report_to_svg(const Report& report);
void emit_report(const Report& report); // writes files per config.formats

// Aggregation helper: mean and standard error of a per-replica metric.
struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};
MeanStderr aggregate(const std::vector<json>& records, const std::string& key);

} // namespace thick
