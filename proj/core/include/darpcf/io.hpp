#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "darpcf/instance.hpp"
#include "darpcf/schedule.hpp"

namespace darpcf {

/// Malformed input. `line` is 1-based; 0 when the problem is the absence of
/// something (for example a missing section).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message);

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Instance files are sectioned text:
//
//   darpcf-instance 1
//   name <text>
//   [service]  key value lines
//   [fleet]    key value lines, then `sessions <k>` and k lines "open close"
//   [locations] `count <n>` and n lines "id x_km y_km"
//   [matrix]   `size <n>` and n rows of n travel times in seconds
//   [requests] `count <r>` and r lines
//              "id class home gp appointment release out_window in_window
//               max_ride_out max_ride_in", windows as "e:l" or "-"
//   [end]
//
// Writing is canonical, so save followed by load and save again reproduces
// the file byte for byte.
void write_instance(std::ostream& os, const Instance& inst);
[[nodiscard]] Instance read_instance(std::istream& is);
void save_instance(const Instance& inst, const std::filesystem::path& path);
[[nodiscard]] Instance load_instance(const std::filesystem::path& path);

// Schedules are CSV with header
//   vehicle,sequence,node,action,leg,request,planned_time,load
// where depot stops carry "-" for leg and request.
void write_schedules(std::ostream& os, const Schedules& schedules);
[[nodiscard]] Schedules read_schedules(std::istream& is);
void save_schedules(const Schedules& schedules, const std::filesystem::path& path);
[[nodiscard]] Schedules load_schedules(const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] std::string format_double(double value);

}  // namespace darpcf
