#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relax {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Run configuration shared by all CLI commands. Parsed from a JSON file;
// unknown keys are rejected so typos cannot silently fall back to defaults.
struct RunConfig {
    // grid / model
    int d = 2;
    int n = 64;
    double L = 8.0 * 3.14159265358979323846;
    double A = 1.0;
    double gamma = 2.0;
    double rho_bar = 1.0;
    double epsilon = 0.1;
    double dt = 0.01;
    double t_final = 1.0;
    std::string model = "ep"; // ep | ks

    // init.*
    std::string init_kind = "gaussian"; // gaussian | single_mode | random_band
    double init_amplitude = 0.01;
    std::uint64_t init_seed = 1;

    // output.*
    int norm_stride = 10;
    int snapshot_stride = 0; // 0 = no snapshots
    std::string output_dir = "out";

    // ladder.* / study
    std::vector<double> ladder_epsilons = {0.2, 0.1, 0.05, 0.025};
    std::string study = "damped_mode"; // damped_mode | ep_ks | frame_consistency

    void validate() const;
};

// Parse a JSON config file; `overrides` are "dotted.key=value" pairs applied
// on top of the file (an empty path gives the defaults).
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

// the effective configuration echoed back as canonical JSON
std::string config_echo(const RunConfig& cfg);

} // namespace relax
