#include <gtest/gtest.h>

#include "oracle/frozen.hpp"
#include "oracle/oracle_input.hpp"
#include "support.hpp"

namespace {

std::string frozen_path() { return std::string(THHKIT_SOURCE_DIR) + "/tests/fixtures/hh_oracle.txt"; }

}  // namespace

TEST(HochschildOracle, EveryFixtureIsFrozen) {
  const auto frozen = oracle::read_frozen(frozen_path());
  for (const auto& name : oracle::kFixtures) {
    ASSERT_TRUE(frozen.count(name)) << name;
    EXPECT_EQ(frozen.at(name).cap, oracle::kCap);
    EXPECT_EQ(frozen.at(name).values.size(), static_cast<std::size_t>(oracle::kCap) + 1);
  }
}

TEST(HochschildOracle, LibraryMatchesFrozenValues) {
  const auto frozen = oracle::read_frozen(frozen_path());
  int integral = 0;
  for (const auto& name : oracle::kFixtures) {
    const auto lib = oracle::library_values(testing_support::fixture(name), oracle::kCap);
    for (const auto& [route, values] : lib) {
      EXPECT_EQ(values, frozen.at(name).values) << name << " via " << route;
      integral += route == "hh_over_Z";
    }
  }
  EXPECT_GE(integral, 2);
}

// Recomputes the oracle for the cheap fixtures so the frozen file cannot
// drift from the brute-force code that produced it.
TEST(HochschildOracle, FrozenValuesReproduce) {
  const auto frozen = oracle::read_frozen(frozen_path());
  for (const std::string name : {"hh_poly_f3.txt", "hh_dual_z.txt", "dga_acyclic.txt", "dga_db_a2.txt"}) {
    const oracle::Input in = oracle::load(testing_support::fixture(name));
    EXPECT_TRUE(oracle::square_zero(in, 4)) << name;
    auto expect = frozen.at(name).values;
    expect.resize(5);
    EXPECT_EQ(oracle::hochschild(in, 4), expect) << name;
  }
}
