#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fockcs/report.hpp"

namespace fockcs {

struct VerifyOptions {
    std::uint64_t seed = 7;
    /// Working truncation. Grids that the criteria state at N = 16/32/64 or
    /// 40/60/80 are scaled proportionally from this value.
    int dim = 64;
    /// Run the criterion groups concurrently; records are still assembled in order.
    bool parallel = false;
    /// Put wall time into the provenance block (breaks byte-identical output).
    bool timing = false;

    void validate() const;
};

/// Truncation at which every threshold was calibrated. Below it, failing
/// truncation-sensitive records are reported as warn.
inline constexpr int kCalibratedDim = 64;

struct CriterionGroup {
    int number;
    std::string title;
};

/// The thirteen acceptance groups in report order.
const std::vector<CriterionGroup>& criterion_groups();

/// Runs one group and returns its records (ids prefixed "cNN.").
std::vector<CheckRecord> run_criterion(int number, const VerifyOptions& opt);

/// Full acceptance suite.
Report verify_all(const VerifyOptions& opt = {});

}  // namespace fockcs
