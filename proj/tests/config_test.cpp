#include <gtest/gtest.h>

#include <string>

#include "qfsim/config.hpp"
#include "qfsim/presets.hpp"

namespace qfsim {
namespace {

TEST(ConfigTest, ReferenceScenarioRoundTripsExactly) {
  const Scenario ref = reference_scenario();
  const std::string text = scenario_to_config(ref);
  const Scenario parsed = parse_scenario_text(text);
  EXPECT_EQ(parsed, ref);
  // And the canonical form is a fixed point of serialize(parse(.)).
  EXPECT_EQ(scenario_to_config(parsed), text);
}

TEST(ConfigTest, AwkwardValuesRoundTrip) {
  Scenario s = reference_scenario();
  s.sim_duration_s = 0.123456789;
  s.cell_capacity_bps = 19.999e6;
  s.tti_ns = 500'000;  // 0.5 ms
  s.sched.epsilon_time_ns = 1;
  s.flows_per_ue[2].frame_interval_ns = 33'333'333;
  s.flows_per_ue[2].rate_cap_bps = 7.25e6;
  s.flows_per_ue[1].gbr_bps = 99'999.5;
  s.flows_per_ue[0].buffer_packets = 17;
  EXPECT_EQ(parse_scenario_text(scenario_to_config(s)), s);
}

TEST(ConfigTest, MinimalConfigUsesDefaults) {
  const Scenario s = parse_scenario_text(
      "[flow.only]\n"
      "packet_size = 50\n"
      "period = 0.001\n");
  EXPECT_EQ(s.num_ues, 6);  // struct defaults untouched
  EXPECT_EQ(s.buffer_packets, 500);
  ASSERT_EQ(s.flows_per_ue.size(), 1u);
  EXPECT_EQ(s.flows_per_ue[0].role, "only");
  EXPECT_EQ(s.flows_per_ue[0].packet_size_bytes, 50);
  EXPECT_FALSE(s.flows_per_ue[0].delay_bound_ns.has_value());
  EXPECT_FALSE(s.flows_per_ue[0].gbr_bps.has_value());
  EXPECT_TRUE(validate_scenario(s).empty());
}

TEST(ConfigTest, CommentsAndWhitespaceAreIgnored) {
  const Scenario s = parse_scenario_text(
      "# leading comment\n"
      "[scenario]\n"
      "  num_ues =  3   ; trailing note\n"
      "\n"
      "seed = 9  # another\n");
  EXPECT_EQ(s.num_ues, 3);
  EXPECT_EQ(s.seed, 9);
}

TEST(ConfigTest, UnknownKeyIsAnError) {
  try {
    parse_scenario_text("[scenario]\nnum_ue = 4\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("unknown key 'num_ue'"), std::string::npos);
    EXPECT_NE(msg.find("line 2"), std::string::npos);
  }
}

TEST(ConfigTest, UnknownSectionIsAnError) {
  EXPECT_THROW(parse_scenario_text("[flows]\n"), ConfigError);
}

TEST(ConfigTest, MalformedNumbersAreErrors) {
  EXPECT_THROW(parse_scenario_text("[scenario]\nnum_ues = six\n"),
               ConfigError);
  EXPECT_THROW(parse_scenario_text("[scenario]\nnum_ues = 6x\n"),
               ConfigError);
  EXPECT_THROW(parse_scenario_text("[scheduler]\nalpha = 0.4.2\n"),
               ConfigError);
}

TEST(ConfigTest, DuplicateKeysAndSectionsAreErrors) {
  EXPECT_THROW(parse_scenario_text("[scenario]\nnum_ues = 4\nnum_ues = 5\n"),
               ConfigError);
  EXPECT_THROW(
      parse_scenario_text("[flow.a]\npacket_size = 10\nperiod = 0.01\n"
                          "[flow.a]\npacket_size = 10\nperiod = 0.01\n"),
      ConfigError);
}

TEST(ConfigTest, AllProblemsAreReportedTogether) {
  try {
    parse_scenario_text(
        "[scenario]\n"
        "num_ues = six\n"
        "bogus = 1\n"
        "[nope]\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("expected an integer"), std::string::npos);
    EXPECT_NE(msg.find("bogus"), std::string::npos);
    EXPECT_NE(msg.find("[nope]"), std::string::npos);
  }
}

TEST(ConfigTest, BadSyntaxIsAnError) {
  EXPECT_THROW(parse_scenario_text("num_ues = 4\n"), ConfigError);  // no section
  EXPECT_THROW(parse_scenario_text("[scenario\nnum_ues = 4\n"), ConfigError);
  EXPECT_THROW(parse_scenario_text("[scenario]\nnum_ues\n"), ConfigError);
  EXPECT_THROW(parse_scenario_text("[scenario]\n= 4\n"), ConfigError);
}

TEST(ConfigTest, EnumValuesAreValidated) {
  EXPECT_THROW(parse_scenario_text("[channel]\nvariation = rayleigh\n"),
               ConfigError);
  EXPECT_THROW(parse_scenario_text("[flow.x]\narrival = poisson\n"),
               ConfigError);
  const Scenario s = parse_scenario_text(
      "[channel]\nvariation = block_fading\nblock_length = 10\n");
  EXPECT_EQ(s.channel.variation, ChannelVariation::kBlockFading);
  EXPECT_EQ(s.channel.block_length_ttis, 10);
}

TEST(ConfigTest, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "qfsim_cfg_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "ref.ini";
  const Scenario ref = reference_scenario();
  save_scenario_file(path, ref);
  EXPECT_EQ(load_scenario_file(path), ref);
  std::filesystem::remove_all(dir);
}

TEST(ConfigTest, MissingFileThrows) {
  EXPECT_THROW(load_scenario_file("/nonexistent/qfsim.ini"), ConfigError);
}

// Guards the shipped config against drifting away from the built-in preset.
TEST(ConfigTest, ShippedReferenceConfigMatchesPreset) {
  const auto path =
      std::filesystem::path(QFSIM_SOURCE_DIR) / "configs" / "reference.ini";
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(load_scenario_file(path), reference_scenario());
}

}  // namespace
}  // namespace qfsim
