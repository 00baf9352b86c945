#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rieszdec {

/// One golden check: passes iff value <= tolerance.
struct SelftestCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SelftestResult {
    std::vector<SelftestCheck> checks;
    bool pass = false;
    std::string digest;  // combined digest of the golden input files
};

/// Writes the golden matrices into `dir` (unless already present), reads them
/// back through the regular file path, and runs every golden check. A supplied
/// tol_override replaces each check's tolerance, which is how an unreachable
/// tolerance is exercised. Parse failures on pre-existing files propagate as
/// ParseError.
SelftestResult run_selftest(const std::filesystem::path& dir,
                            std::optional<double> tol_override = std::nullopt);

} // namespace rieszdec
