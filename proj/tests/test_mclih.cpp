#include <gtest/gtest.h>

#include "darpcf/experiment.hpp"
#include "darpcf/mclih.hpp"
#include "darpcf/verify.hpp"
#include "support/generated.hpp"
#include "support/toys.hpp"

namespace darpcf {
namespace {

bool same_schedules(const Schedules& a, const Schedules& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v].stops.size() != b[v].stops.size()) return false;
    for (std::size_t k = 0; k < a[v].stops.size(); ++k) {
      if (!a[v].stops[k].same_record(b[v].stops[k])) return false;
    }
  }
  return true;
}

TEST(Baseline, ToyServesBothPairsAtBookedTimes) {
  const auto inst = testing::collinear_toy(1);
  const auto result = run_baseline_gih(inst);
  VerifyOptions fixed;
  fixed.fixed_chronic_appointments = true;
  EXPECT_TRUE(verify_schedules(inst, result.schedules, fixed).ok());
  EXPECT_EQ(served_count(inst, result.schedules).served_pairs, 2);
  EXPECT_TRUE(result.rejected.empty());
}

TEST(Mclih, ToyServesBothPairs) {
  const auto inst = testing::collinear_toy(1);
  const auto result = run_mclih(inst);
  const auto report = verify_schedules(inst, result.schedules);
  ASSERT_TRUE(report.ok()) << report.violations.front();
  EXPECT_EQ(served_count(inst, result.schedules).served_pairs, 2);
  // The shared cluster route reaches B's GP when the practice opens.
  const auto& stops = result.schedules[0].stops;
  ASSERT_GE(stops.size(), 4U);
  EXPECT_EQ(stops[3].request, 1);
  EXPECT_EQ(stops[3].action, StopAction::delivery);
  EXPECT_EQ(stops[3].planned_time, 1800);
}

TEST(Mclih, WithoutChronicPatientsEqualsBaseline) {
  const auto inst = testing::small_day(21, 80, 3, 0.0, 0.0);
  ASSERT_EQ(inst.chronic_count(), 0U);
  const auto gih = run_baseline_gih(inst);
  const auto mclih = run_mclih(inst);
  EXPECT_TRUE(same_schedules(gih.schedules, mclih.schedules));
  EXPECT_EQ(gih.rejected, mclih.rejected);
}

TEST(Mclih, DeterministicPerSeed) {
  const auto inst = testing::small_day(22, 150);
  MclihOptions o;
  o.seed = 5;
  EXPECT_TRUE(same_schedules(run_mclih(inst, o).schedules, run_mclih(inst, o).schedules));
}

TEST(Mclih, RejectedListMatchesSchedules) {
  const auto inst = testing::small_day(23, 200, 2);
  const auto result = run_mclih(inst);
  const auto served = served_requests(inst, result.schedules);
  std::size_t unserved = 0;
  for (bool s : served) unserved += s ? 0U : 1U;
  EXPECT_EQ(result.rejected.size(), unserved);
  EXPECT_TRUE(std::is_sorted(result.rejected.begin(), result.rejected.end()));
}

class SolverFuzz : public ::testing::TestWithParam<int> {};

TEST_P(SolverFuzz, EveryAlgorithmVerifies) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  const auto inst = testing::small_day(100 + seed, 60 + 25 * GetParam(), 1 + GetParam() % 4);
  for (auto algo : {Algorithm::gih, Algorithm::mclih, Algorithm::mcma}) {
    const auto result = run_algorithm(inst, algo, seed);
    const auto report = verify_schedules(inst, result.schedules, verify_options_for(algo));
    EXPECT_TRUE(report.ok()) << to_string(algo) << ": " << report.violations.front();
  }
}

INSTANTIATE_TEST_SUITE_P(SmallDays, SolverFuzz, ::testing::Range(0, 8));

}  // namespace
}  // namespace darpcf
