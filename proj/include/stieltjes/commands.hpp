#pragma once

#include "stieltjes/mutation.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stieltjes {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitConfig = 2,
    kExitNumeric = 3,
    kExitPrecondition = 4,
    kExitIo = 5,
};

struct CliOptions {
    std::string config_path;
    std::size_t grid_n = 4096;
    bool grid_n_given = false;
    std::string out_path;  // empty: standard output
    std::string format = "csv";
    std::optional<std::vector<double>> deltas;
    std::string level = "quick";
};

int cmd_integrate(const CliOptions& opt, std::ostream& out);
int cmd_gexp(const CliOptions& opt, std::ostream& out);
int cmd_solve2(const CliOptions& opt, std::ostream& out);
int cmd_helmholtz(const CliOptions& opt, std::ostream& out);
int cmd_wronskian(const CliOptions& opt, std::ostream& out);
int cmd_verify(const CliOptions& opt, std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to exit codes with a message on err.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace stieltjes
