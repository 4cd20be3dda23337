#ifndef NSFR_CLI_HPP
#define NSFR_CLI_HPP

#include <map>
#include <string>
#include <vector>

#include "nsfr/cases.hpp"
#include "nsfr/diagnostics.hpp"
#include "nsfr/operator_set.hpp"
#include "nsfr/semidiscretization.hpp"

namespace nsfr {

/// Raised for malformed or inconsistent run configurations; maps to a
/// distinct exit code from instability aborts.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A resolved run: the case definition with all overrides applied plus
/// output plumbing.
struct RunConfig {
    CaseDefinition def;
    double atwood = 1.0 / 3.0; // khi only
    std::string out_dir;
    int output_every = 1;
    bool dump_fields_flag = false;
    /// Key-value echo of the fully resolved configuration.
    std::map<std::string, std::string> echo() const;
};

/// Flat key = value document; '#' comments, blank lines, and [section]
/// headers are permitted. Unknown keys and duplicate keys are rejected.
std::map<std::string, std::string> read_key_values(const std::string& path);

/// Builds a RunConfig from key-value pairs; defaults come from the case
/// registry. Throws ConfigError naming the offending key.
RunConfig resolve_config(const std::map<std::string, std::string>& kv);

RunConfig parse_config(const std::string& path);

enum class RunStatus { Completed, Instability };

struct RunSummary {
    RunStatus status = RunStatus::Completed;
    std::string abort_reason;
    double t_end = 0.0;
    double t_target = 0.0;
    int steps = 0;
    double gamma_mean = 1.0;
    bool has_error_norms = false;
    ErrorNorms error; // pressure (Euler) or state (Burgers) vs exact solution
    int exit_code() const { return status == RunStatus::Completed ? 0 : 3; }
};

/// Executes the time loop and writes config echo, history.csv, optional
/// field dump, and summary.txt into cfg.out_dir.
RunSummary run_case(const RunConfig& cfg);

/// Runs every job of a named experiment under out_dir/<label> and writes the
/// post-processing table (rates.csv or scan.csv).
int run_experiment(const std::string& name, const std::string& out_dir);

/// Plain-text dump: header line "d p n0 n1 n2 n_states", then one row per
/// node of an equispaced degree-p per-element grid, element-major, with
/// coordinates followed by state values at 17 significant digits.
void dump_fields(const GlobalState& state, const CartesianMesh& mesh,
                 const OperatorSet& ops, const std::string& path);

struct FieldDump {
    int dim = 0;
    int p = 0;
    std::array<int, 3> n = {1, 1, 1};
    int n_states = 0;
    std::vector<std::array<double, 3>> coords;
    std::vector<std::vector<double>> values;
};

FieldDump load_fields(const std::string& path);

/// Writes the operator matrices for (p, d, c) to the stream.
void dump_operators(int p, int dim, double c, std::ostream& os);

/// Entry point used by the tool binary; returns the process exit code.
int cli_main(const std::vector<std::string>& args);

} // namespace nsfr

#endif
