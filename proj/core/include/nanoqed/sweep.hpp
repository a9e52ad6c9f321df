#pragma once

// Deterministic parameter-sweep orchestration over the calculator and
// spectroscopy operations.

#include "nanoqed/config.hpp"
#include "nanoqed/io.hpp"

#include <optional>

namespace nanoqed {

struct SweepResult {
    std::optional<ResultTable> table;
    std::optional<SpectroscopyMap> map;
    bool any_failure = false;
};

// Evaluates config.sweep.op over the sweep grid. Scalar ops produce a
// ResultTable with a trailing `failed` column; "single-tone" produces a
// SpectroscopyMap. Output is independent of the thread count.
SweepResult run_sweep(const RunConfig& config, int threads = 1);

// The `design` report: every closed-form calculator chained from the beam
// and bias-circuit blocks.
ResultTable design_report(const RunConfig& config);

} // namespace nanoqed
