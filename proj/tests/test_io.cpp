#include <gtest/gtest.h>

#include <sstream>

#include "darpcf/generator.hpp"
#include "darpcf/io.hpp"
#include "darpcf/mcma.hpp"
#include "support/toys.hpp"

namespace darpcf {
namespace {

std::string to_text(const Instance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

Instance from_text(const std::string& text) {
  std::istringstream is(text);
  return read_instance(is);
}

Instance small_generated(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.pairs_morning = cfg.pairs_full_day = {60, 60};
  return generate_instance(cfg);
}

TEST(InstanceIo, RoundTripIsByteIdentical) {
  for (const auto& inst : {testing::collinear_toy(2), small_generated(3), small_generated(4)}) {
    const auto first = to_text(inst);
    const auto loaded = from_text(first);
    EXPECT_EQ(loaded, inst);
    EXPECT_EQ(to_text(loaded), first);
  }
}

TEST(InstanceIo, TruncatedFileNamesMissingSection) {
  const auto text = to_text(testing::collinear_toy());
  const auto cut = text.substr(0, text.find("[requests]"));
  try {
    (void)from_text(cut);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 0U);
    EXPECT_NE(std::string(e.what()).find("missing section [requests]"), std::string::npos);
  }
}

TEST(InstanceIo, ShortMatrixIsADimensionError) {
  auto text = to_text(testing::collinear_toy());
  // Drop the last matrix row.
  const auto requests = text.find("[requests]");
  const auto row_end = text.rfind('\n', requests - 1);
  const auto row_start = text.rfind('\n', row_end - 1);
  text.erase(row_start + 1, row_end - row_start);
  try {
    (void)from_text(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("matrix dimension"), std::string::npos);
    EXPECT_EQ(e.field(), "matrix");
  }
}

TEST(InstanceIo, BadNumberReportsLineAndField) {
  auto text = to_text(testing::collinear_toy());
  const auto pos = text.find("[locations]");
  const auto line_start = text.find('\n', text.find('\n', pos) + 1) + 1;
  text.replace(line_start, 1, "x");
  try {
    (void)from_text(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0U);
    EXPECT_EQ(e.field(), "location.id");
  }
}

TEST(InstanceIo, RejectsForeignHeader) {
  EXPECT_THROW((void)from_text("something else\n"), ParseError);
  EXPECT_THROW((void)from_text(""), ParseError);
}

TEST(ScheduleIo, RoundTrip) {
  const auto inst = small_generated(5);
  const auto result = run_mcma(inst, {});
  std::ostringstream os;
  write_schedules(os, result.schedules);
  std::istringstream is(os.str());
  const auto loaded = read_schedules(is);
  ASSERT_EQ(loaded.size(), result.schedules.size());
  for (std::size_t v = 0; v < loaded.size(); ++v) {
    ASSERT_EQ(loaded[v].stops.size(), result.schedules[v].stops.size());
    for (std::size_t k = 0; k < loaded[v].stops.size(); ++k) {
      EXPECT_TRUE(loaded[v].stops[k].same_record(result.schedules[v].stops[k]));
    }
  }
  std::ostringstream again;
  write_schedules(again, loaded);
  EXPECT_EQ(again.str(), os.str());
}

TEST(ScheduleIo, RejectsUnknownAction) {
  std::istringstream is(
      "vehicle,sequence,node,action,leg,request,planned_time,load\n"
      "0,0,0,teleport,-,-,0,0\n");
  EXPECT_THROW((void)read_schedules(is), ParseError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(1.5), "1.5");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace darpcf
