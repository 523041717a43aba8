#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "bbsd/config.hpp"
#include "bbsd/error.hpp"

namespace bbsd {
namespace {

TEST(Config, EmptyObjectGivesDefaults) {
  const auto c = parse_config("{}");
  const ScenarioConfig d;
  EXPECT_EQ(c.M, d.M);
  EXPECT_EQ(c.J, d.J);
  EXPECT_EQ(c.T_range, d.T_range);
  EXPECT_EQ(c.seed, d.seed);
}

TEST(Config, ReadsFieldNamesAsKeys) {
  const auto c = parse_config(R"({"M": 6, "L": 2, "J": 3, "snr_db": 10.5, "transient_db_below": 20,
                                  "sigma_v2": 0.5, "num_snapshots": 5000, "T_range": [1, 4],
                                  "num_trials": 50, "seed": 99, "transient_enabled": false})");
  EXPECT_EQ(c.M, 6);
  EXPECT_EQ(c.L, 2);
  EXPECT_EQ(c.J, 3);
  EXPECT_DOUBLE_EQ(c.snr_db, 10.5);
  EXPECT_DOUBLE_EQ(c.transient_db_below, 20.0);
  EXPECT_DOUBLE_EQ(c.sigma_v2, 0.5);
  EXPECT_EQ(c.num_snapshots, 5000);
  EXPECT_EQ(c.T_range, (std::vector<int>{1, 4}));
  EXPECT_EQ(c.num_trials, 50);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_FALSE(c.transient_enabled);
}

TEST(Config, RejectsUnknownKeysTypeErrorsAndInvalidValues) {
  EXPECT_THROW(parse_config(R"({"M": 10, "bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"M": "ten"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"M": 3, "L": 3})"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_config("{not json"), ConfigError);
}

TEST(Config, EchoRoundTrips) {
  ScenarioConfig c;
  c.J = 20;
  c.seed = 1234567890123ull;
  c.T_range = {2, 3};
  const auto back = parse_config(to_json(c));
  EXPECT_EQ(back.J, 20);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.T_range, c.T_range);
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "bbsd_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"J": 7})";
  }
  EXPECT_EQ(load_config(path).J, 7);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), ConfigError);
}

}  // namespace
}  // namespace bbsd
