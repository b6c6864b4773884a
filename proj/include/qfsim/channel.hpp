#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "qfsim/rng.hpp"
#include "qfsim/scenario.hpp"
#include "qfsim/time.hpp"

namespace qfsim {

// Per-UE link quality expressed as PRB payload in bits. The nominal
// efficiency is scaled by a per-UE multiplier; with block fading the
// multiplier is redrawn per (UE, block) from the counter RNG, so channel
// realizations do not depend on the scheduler under test.
class ChannelModel {
 public:
  ChannelModel(const Scenario& s, std::uint64_t run_seed)
      : num_ues_(s.num_ues),
        num_prbs_(s.num_prbs),
        base_bits_per_prb_(s.base_bits_per_prb()),
        cfg_(s.channel),
        seed_(run_seed) {
    if (cfg_.variation == ChannelVariation::kStaticPerUe) {
      static_mult_.resize(static_cast<std::size_t>(num_ues_));
      for (int ue = 0; ue < num_ues_; ++ue) {
        static_mult_[static_cast<std::size_t>(ue)] = spaced_multiplier(ue);
      }
    }
  }

  int num_ues() const { return num_ues_; }
  int num_prbs() const { return num_prbs_; }
  double base_bits_per_prb() const { return base_bits_per_prb_; }

  double multiplier(int ue_id, std::int64_t tti_index) const {
    assert(ue_id >= 0 && ue_id < num_ues_);
    switch (cfg_.variation) {
      case ChannelVariation::kNone:
        return 1.0;
      case ChannelVariation::kStaticPerUe:
        return static_mult_[static_cast<std::size_t>(ue_id)];
      case ChannelVariation::kBlockFading: {
        const std::int64_t block = tti_index / cfg_.block_length_ttis;
        const std::uint64_t h =
            rng::draw(seed_, static_cast<std::uint64_t>(ue_id),
                      rng::Stream::kChannelBlock,
                      static_cast<std::uint64_t>(block));
        return cfg_.multiplier_lo +
               (cfg_.multiplier_hi - cfg_.multiplier_lo) * rng::to_unit(h);
      }
    }
    return 1.0;
  }

  double bits_per_prb(int ue_id, std::int64_t tti_index) const {
    return base_bits_per_prb_ * multiplier(ue_id, tti_index);
  }

 private:
  // Best multiplier at UE 0, worst at the last UE, evenly spaced.
  double spaced_multiplier(int ue) const {
    if (num_ues_ == 1) return cfg_.multiplier_hi;
    const double frac =
        static_cast<double>(ue) / static_cast<double>(num_ues_ - 1);
    return cfg_.multiplier_hi - (cfg_.multiplier_hi - cfg_.multiplier_lo) * frac;
  }

  int num_ues_;
  int num_prbs_;
  double base_bits_per_prb_;
  ChannelConfig cfg_;
  std::uint64_t seed_;
  std::vector<double> static_mult_;
};

// Snapshot of the grid for one TTI: the PRB budget plus each UE's
// efficiency, fixed for the slot.
struct ResourceGrid {
  std::int64_t tti_index = 0;
  int num_prbs = 0;
  std::vector<double> bits_per_prb_by_ue;

  double bits_per_prb(int ue_id) const {
    assert(ue_id >= 0 &&
           ue_id < static_cast<int>(bits_per_prb_by_ue.size()));
    return bits_per_prb_by_ue[static_cast<std::size_t>(ue_id)];
  }
};

inline ResourceGrid grid_for_tti(const ChannelModel& ch,
                                 std::int64_t tti_index) {
  ResourceGrid g;
  g.tti_index = tti_index;
  g.num_prbs = ch.num_prbs();
  g.bits_per_prb_by_ue.resize(static_cast<std::size_t>(ch.num_ues()));
  for (int ue = 0; ue < ch.num_ues(); ++ue) {
    g.bits_per_prb_by_ue[static_cast<std::size_t>(ue)] =
        ch.bits_per_prb(ue, tti_index);
  }
  return g;
}

}  // namespace qfsim
