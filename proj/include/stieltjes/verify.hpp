#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stieltjes {

enum class VerifyLevel { Quick, Full };

struct VerifyRow {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;  // set when the suite threw
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool passed() const;
};

/// Runs every identity suite; a suite that throws is recorded as failed.
VerifyReport run_verify(VerifyLevel level);

}  // namespace stieltjes
