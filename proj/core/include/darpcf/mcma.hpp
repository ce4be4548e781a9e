#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "darpcf/assignment.hpp"
#include "darpcf/intra_route.hpp"
#include "darpcf/placement.hpp"
#include "darpcf/solve.hpp"

namespace darpcf {

enum class InitPolicy { longest, random };

struct McmaOptions {
  std::uint64_t seed = 1;
  InitPolicy init_policy = InitPolicy::longest;
  /// Optional clusters are held back while the share of placed chronic
  /// patients leads the share of elapsed opening time by more than this.
  double fairness_margin = 0.05;
  /// Failed return rides per patient before the pair is rejected.
  int max_failures = 3;
};

struct McmaStats {
  std::size_t drop_steps = 0;
  std::size_t wake_steps = 0;
  std::size_t matchings = 0;
  std::size_t recoveries = 0;
  /// Rides that entered a schedule at least once.
  std::size_t attempts = 0;
};

/// Rolling-horizon scheduler driven by the drop-off events of committed
/// schedules. Each schedule is a committed prefix followed by an interim
/// tail that later horizons may still change; the tail is committed once
/// the vehicle has worked through its prefix. Committed stops never change,
/// except that a failed patient's outbound ride is withdrawn.
class McmaEngine {
 public:
  McmaEngine(const Instance& inst, const McmaOptions& options);

  /// Seeds each vehicle with one cluster and leaves the rest open.
  void init(std::vector<RoutedCluster> clusters);
  /// Processes the next event; false once nothing is left to do.
  bool step();
  /// Withdraws the outbound ride of a patient whose return could not be
  /// matched and tries to reschedule the pair.
  void recover_failure(RequestId request);
  /// Resolves what is still open, then runs the online walk-in phase.
  SolveResult finish() &&;

  struct Event {
    Seconds time = 0;
    int kind = 0;  // 0 drop, 1 wake
    VehicleId vehicle = -1;
    RequestId request = kNoRequest;
    Leg leg = Leg::outbound;
    auto operator<=>(const Event&) const = default;
  };
  struct PendingReturn {
    RequestId request = kNoRequest;
    TimeWindow window;
  };

  [[nodiscard]] const RoutingState& state() const { return state_; }
  [[nodiscard]] const std::set<Event>& drop_queue() const { return queue_; }
  [[nodiscard]] const std::vector<PendingReturn>& waiting_list() const { return w1_; }
  [[nodiscard]] const std::vector<RoutedCluster>& open_clusters() const { return w2_; }
  [[nodiscard]] const McmaStats& stats() const { return stats_; }
  [[nodiscard]] Seconds now() const { return now_; }

 private:
  void on_drop(const Event& e);
  void try_interim_return(RequestId request, Seconds arrival);
  void expire_returns();
  void match_available();
  /// Commits v's interim tail and queues its drop-offs.
  void promote(VehicleId v);
  /// Promotes every vehicle that has run out of committed work.
  void promote_idle();
  void schedule_wake(Seconds at);
  [[nodiscard]] bool is_close(const Stop& neighbour, RequestId request, Leg leg) const;
  [[nodiscard]] std::vector<VehicleId> available_vehicles() const;
  [[nodiscard]] bool optional_jobs_allowed() const;
  [[nodiscard]] std::optional<InsertionCandidate> append_return(VehicleId v,
                                                               const PendingReturn& job) const;
  [[nodiscard]] std::optional<PlacedCluster> append_cluster_plan(VehicleId v,
                                                                 const RoutedCluster& c) const;

  const Instance* inst_;
  McmaOptions options_;
  RoutingState state_;
  std::set<Event> queue_;
  std::vector<PendingReturn> w1_;
  std::vector<RoutedCluster> w2_;
  std::map<RequestId, int> failures_;
  std::vector<RequestId> rejected_;
  std::optional<Seconds> pending_wake_;
  Seconds now_ = 0;
  std::size_t chronic_total_ = 0;
  McmaStats stats_;
};

/// Mini-cluster matching: cluster and route the chronic outbound rides, then
/// run the rolling horizon and the online walk-in phase.
[[nodiscard]] SolveResult run_mcma(const Instance& inst, const McmaOptions& options = {},
                                   McmaStats* stats = nullptr);

}  // namespace darpcf
