#pragma once

// Convenience header pulling in the whole library.

#include "csv.hpp"      // IWYU pragma: export
#include "errors.hpp"   // IWYU pragma: export
#include "infodist.hpp" // IWYU pragma: export
#include "measurement.hpp" // IWYU pragma: export
#include "oracle.hpp"   // IWYU pragma: export
#include "probes.hpp"   // IWYU pragma: export
#include "qstate.hpp"   // IWYU pragma: export
#include "sweep.hpp"    // IWYU pragma: export
