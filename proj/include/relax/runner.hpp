#pragma once

#include <string>

#include "relax/config.hpp"

namespace relax {

// exit codes: 0 ok, 2 config error, 3 numeric blow-up/abort, 4 certification failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitCertification = 4;

// command is one of linear-verify | besov | simulate | limit-study; artifacts
// are written under cfg.output_dir (CSV files, summary.json, snapshots)
int run_command(const std::string& command, const RunConfig& cfg);

} // namespace relax
