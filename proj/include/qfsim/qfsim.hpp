#pragma once

// Umbrella header: single include for the whole simulator.

#include "qfsim/channel.hpp"     // IWYU pragma: export
#include "qfsim/config.hpp"      // IWYU pragma: export
#include "qfsim/experiment.hpp"  // IWYU pragma: export
#include "qfsim/flow.hpp"        // IWYU pragma: export
#include "qfsim/max_ci.hpp"      // IWYU pragma: export
#include "qfsim/metrics.hpp"     // IWYU pragma: export
#include "qfsim/packet.hpp"      // IWYU pragma: export
#include "qfsim/presets.hpp"     // IWYU pragma: export
#include "qfsim/profile.hpp"     // IWYU pragma: export
#include "qfsim/qos_pf.hpp"      // IWYU pragma: export
#include "qfsim/rng.hpp"         // IWYU pragma: export
#include "qfsim/scenario.hpp"    // IWYU pragma: export
#include "qfsim/scheduler.hpp"   // IWYU pragma: export
#include "qfsim/simulation.hpp"  // IWYU pragma: export
#include "qfsim/static_priority.hpp"  // IWYU pragma: export
#include "qfsim/time.hpp"        // IWYU pragma: export
#include "qfsim/traffic.hpp"     // IWYU pragma: export
