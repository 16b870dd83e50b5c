#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vbs/cli/config.hpp"
#include "vbs/cli/table.hpp"

namespace vbs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitCheckFailed = 4;

struct CommandResult {
    Table table;
    nlohmann::ordered_json config;
    OutputFormat format = OutputFormat::csv;
    std::vector<std::string> warnings;
    int exit_code = kExitOk;
};

CommandResult cmd_shift(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);
CommandResult cmd_scan_eta(const RunConfig& config);
CommandResult cmd_sidebands(const RunConfig& config);
CommandResult cmd_check(const RunConfig& config);

CommandResult dispatch(const RunConfig& config);

}  // namespace vbs::cli
