#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qfsim/channel.hpp"
#include "qfsim/flow.hpp"
#include "qfsim/packet.hpp"
#include "qfsim/scheduler.hpp"
#include "qfsim/time.hpp"

namespace qfsim {

// Optional per-TTI hooks. `on_allocation` fires after the decision but
// before it is applied, so the callback sees the queue state the policy
// saw next to the grants it produced; tests and trace dumps hang off this.
struct TtiObserver {
  std::function<void(const TtiClock&, std::span<const Packet>)> on_arrivals;
  std::function<void(const TtiClock&, const std::vector<FlowState>&,
                     const ResourceGrid&, const Allocation&)>
      on_allocation;
};

}  // namespace qfsim
