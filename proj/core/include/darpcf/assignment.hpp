#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "darpcf/instance.hpp"

namespace darpcf {

/// Dense cost matrix with an explicit mask of allowed cells.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> cost;  // row-major
  std::vector<bool> allowed;       // row-major

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), cost(r * c, 0), allowed(r * c, true) {}

  [[nodiscard]] std::int64_t at(std::size_t i, std::size_t j) const { return cost[i * cols + j]; }
  [[nodiscard]] bool ok(std::size_t i, std::size_t j) const { return allowed[i * cols + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t c) {
    cost[i * cols + j] = c;
    allowed[i * cols + j] = true;
  }
  void forbid(std::size_t i, std::size_t j) { allowed[i * cols + j] = false; }
};

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (row, col), by row
  std::int64_t cost = 0;
};

/// Minimum-weight matching among the maximum-cardinality matchings that use
/// allowed cells only. Rectangular input is fine.
[[nodiscard]] Matching hungarian(const CostMatrix& m);

/// An empty vehicle at the current horizon: `ready_in` is its remaining
/// time until it can leave `location`.
struct VehicleSlot {
  NodeId location = 0;
  Seconds ready_in = 0;
};

/// A pending return ride that must be served: the pickup and its window.
struct MustServeJob {
  NodeId pickup = 0;
  TimeWindow window;
};

/// An open mini-cluster that may be served: the node of its first pickup.
struct OptionalJob {
  NodeId pickup = 0;
};

/// Vehicles against jobs; columns are the must-serve jobs followed by the
/// optional ones.
struct AssignmentProblem {
  std::size_t must_serve = 0;
  std::size_t optional = 0;
  CostMatrix costs;

  [[nodiscard]] std::size_t vehicles() const { return costs.rows; }
  [[nodiscard]] std::size_t jobs() const { return costs.cols; }
  [[nodiscard]] bool is_must_serve(std::size_t col) const { return col < must_serve; }
};

/// Edge costs: for a must-serve job the transition time including waiting,
/// max(t_ij, e_j - now - d_i), unreachable if now + d_i + t_ij > l_j; for an
/// optional job the travel time.
[[nodiscard]] AssignmentProblem build_costs(const std::vector<VehicleSlot>& vehicles,
                                            const std::vector<MustServeJob>& must_serve,
                                            const std::vector<OptionalJob>& optional, Seconds now,
                                            const TravelMatrix& t);

/// No matching with allowed edges covers every must-serve job.
class InfeasibleW1 : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Costs after shifting every optional-job column by |jobs| * C, where C is
/// one more than the largest allowed cost. Must-serve columns are unchanged.
struct TransformedCosts {
  CostMatrix costs;
  std::int64_t bound = 0;  // C
  std::int64_t shift = 0;  // |jobs| * C
};

/// Throws InfeasibleW1 if the must-serve jobs cannot all be matched.
[[nodiscard]] TransformedCosts transform_costs(const AssignmentProblem& p);

struct VehicleAssignment {
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (vehicle, job)
  /// Sum of the untransformed costs.
  std::int64_t cost = 0;
};

/// Maximum matching that covers every must-serve job at minimum original
/// cost. Throws InfeasibleW1.
[[nodiscard]] VehicleAssignment solve_vehicle_rescheduling(const AssignmentProblem& p);

}  // namespace darpcf
