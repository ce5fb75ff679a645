#pragma once

// Umbrella header.

#include "errors.hpp"     // IWYU pragma: export
#include "rng.hpp"        // IWYU pragma: export
#include "stats.hpp"      // IWYU pragma: export
#include "csv.hpp"        // IWYU pragma: export
#include "table.hpp"      // IWYU pragma: export
#include "preprocess.hpp" // IWYU pragma: export
#include "dataset.hpp"    // IWYU pragma: export
#include "config.hpp"     // IWYU pragma: export
#include "scorer.hpp"     // IWYU pragma: export
#include "split.hpp"      // IWYU pragma: export
#include "logistic.hpp"   // IWYU pragma: export
#include "tree.hpp"       // IWYU pragma: export
#include "gbm.hpp"        // IWYU pragma: export
#include "models.hpp"     // IWYU pragma: export
#include "evaluate.hpp"   // IWYU pragma: export
#include "counts.hpp"     // IWYU pragma: export
#include "metrics.hpp"    // IWYU pragma: export
#include "inference.hpp"  // IWYU pragma: export
#include "bootstrap.hpp"  // IWYU pragma: export
#include "mitigation.hpp" // IWYU pragma: export
#include "harness.hpp"    // IWYU pragma: export
#include "report_io.hpp"  // IWYU pragma: export
