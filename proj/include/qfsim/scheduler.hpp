#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "qfsim/channel.hpp"
#include "qfsim/flow.hpp"
#include "qfsim/time.hpp"

namespace qfsim {

// Read-only view handed to a policy each TTI. Policies must not mutate
// flow state; all bookkeeping happens when the allocation is applied.
struct SchedulerInput {
  TtiClock tti;
  const std::vector<FlowState>* flows = nullptr;
  const ResourceGrid* grid = nullptr;
};

struct Grant {
  int prbs = 0;
  std::int64_t bytes = 0;

  bool operator==(const Grant&) const = default;
};

struct Allocation {
  std::int64_t tti_index = 0;
  std::vector<Grant> grants;  // indexed by flow_id
  // Indexed by flow_id: the policy's scalar ranking value for this TTI
  // (larger is served earlier); 0 for flows that were not candidates.
  std::vector<double> metrics;
  double decision_seconds = 0.0;  // wall-clock cost of the decision

  int total_prbs() const {
    int total = 0;
    for (const Grant& g : grants) total += g.prbs;
    return total;
  }
  std::int64_t total_bytes() const {
    std::int64_t total = 0;
    for (const Grant& g : grants) total += g.bytes;
    return total;
  }
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string_view name() const = 0;
  virtual Allocation schedule(const SchedulerInput& in) = 0;
};

// Largest whole-byte amount a flow may take in one TTI: its backlog,
// further clipped by the per-TTI budget of an optional rate cap.
inline std::int64_t serviceable_bytes(const FlowState& f, double tti_seconds) {
  std::int64_t desired = f.queued_bytes;
  if (f.profile.rate_cap_bps) {
    const auto budget = static_cast<std::int64_t>(
        std::floor(*f.profile.rate_cap_bps * tti_seconds / 8.0));
    if (budget < desired) desired = budget;
  }
  return desired;
}

// Walks the candidate list in the given order and hands each flow the
// fewest PRBs that cover its serviceable backlog, until the grid runs out.
// Grants never exceed the PRB payload, the flow's backlog, or its rate
// cap, so every policy built on this allocator inherits those invariants.
inline Allocation greedy_allocate(const SchedulerInput& in,
                                  const std::vector<const FlowState*>& order) {
  Allocation alloc;
  alloc.tti_index = in.tti.index;
  alloc.grants.assign(in.flows->size(), Grant{});

  int remaining = in.grid->num_prbs;
  const double tti_s = in.tti.tti_seconds();
  for (const FlowState* f : order) {
    if (remaining == 0) break;
    const std::int64_t desired = serviceable_bytes(*f, tti_s);
    if (desired <= 0) continue;

    const double bpp = in.grid->bits_per_prb(f->ue_id);
    const auto needed = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(desired) * 8.0 / bpp));
    const int prbs =
        static_cast<int>(needed < remaining ? needed : remaining);
    const auto payload = static_cast<std::int64_t>(
        std::floor(static_cast<double>(prbs) * bpp / 8.0));
    const std::int64_t bytes = desired < payload ? desired : payload;
    if (bytes <= 0) continue;

    alloc.grants[static_cast<std::size_t>(f->flow_id)] = Grant{prbs, bytes};
    remaining -= prbs;
  }
  return alloc;
}

}  // namespace qfsim
