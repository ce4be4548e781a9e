#include "darpcf/mcma.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "darpcf/clustering.hpp"

namespace darpcf {

McmaEngine::McmaEngine(const Instance& inst, const McmaOptions& options)
    : inst_(&inst), options_(options), state_(inst, make_empty_schedules(inst)) {
  now_ = inst.fleet.day_start;
  chronic_total_ = inst.chronic_count();
}

void McmaEngine::init(std::vector<RoutedCluster> clusters) {
  const auto& inst = *inst_;
  std::vector<std::size_t> order(clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (options_.init_policy == InitPolicy::longest) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return clusters[a].duration() > clusters[b].duration();
    });
  } else {
    std::mt19937_64 rng(options_.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  std::vector<bool> seeded(clusters.size(), false);
  const auto m = static_cast<std::size_t>(inst.fleet.vehicles);
  for (std::size_t v = 0; v < m && v < order.size(); ++v) {
    const auto& c = clusters[order[v]];
    const auto vehicle = static_cast<VehicleId>(v);
    const auto placed = place_cluster(inst, c, earliest_cluster_start(inst, state_.schedule(vehicle), c),
                                      &state_.arrivals());
    if (placed && append_cluster(state_, vehicle, *placed)) seeded[order[v]] = true;
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (!seeded[i]) w2_.push_back(std::move(clusters[i]));
  }
  for (VehicleId v = 0; v < inst.fleet.vehicles; ++v) promote(v);
  if (queue_.empty() && !w2_.empty()) schedule_wake(now_);
}

bool McmaEngine::step() {
  if (queue_.empty()) return false;
  const Event e = *queue_.begin();
  queue_.erase(queue_.begin());
  now_ = std::max(now_, e.time);
  if (e.kind == 0) {
    on_drop(e);
  } else {
    if (pending_wake_ && *pending_wake_ == e.time) pending_wake_.reset();
    ++stats_.wake_steps;
    expire_returns();
    match_available();
  }
  promote_idle();
  if (queue_.empty() && (!w1_.empty() || !w2_.empty())) {
    schedule_wake(now_ + inst_->service.max_window);
  }
  return true;
}

void McmaEngine::on_drop(const Event& e) {
  const auto& s = state_.schedule(e.vehicle);
  const auto it = std::find_if(s.stops.begin(), s.stops.end(), [&](const Stop& st) {
    return st.action == StopAction::delivery && st.request == e.request && st.leg == e.leg &&
           st.planned_time == e.time;
  });
  if (it == s.stops.end()) return;  // withdrawn since it was queued
  ++stats_.drop_steps;
  const int load = it->load_after;

  if (e.leg == Leg::outbound && inst_->request(e.request).chronic()) {
    bool has_return = false;
    for (const auto& sched : state_.schedules()) {
      for (const auto& st : sched.stops) {
        if (st.request == e.request && st.leg == Leg::inbound && st.serves_request()) has_return = true;
      }
    }
    if (!has_return) try_interim_return(e.request, e.time);
  }
  expire_returns();
  if (load == 0) match_available();
}

bool McmaEngine::is_close(const Stop& neighbour, RequestId request, Leg leg) const {
  if (!neighbour.serves_request()) return false;
  const auto& t = inst_->travel;
  auto as_ride = [&](RequestId id, Leg l) {
    const auto& r = inst_->request(id);
    RequestPair p;
    p.id = id;
    p.home = r.pickup_node(l);
    p.gp = r.delivery_node(l);
    return p;
  };
  const auto a = as_ride(neighbour.request, neighbour.leg);
  const auto b = as_ride(request, leg);
  const Seconds shared = std::min(pair_cost(a, b, t).cost, pair_cost(b, a, t).cost);
  const Seconds separate = t(a.home, a.gp) + t(b.home, b.gp);
  return static_cast<double>(shared) <= inst_->service.rho * static_cast<double>(separate);
}

void McmaEngine::try_interim_return(RequestId request, Seconds arrival) {
  const auto& r = inst_->request(request);
  const auto ride = coupled_inbound(*inst_, r, arrival);
  InsertOptions opts;
  opts.frozen_until = now_;
  for (const auto& c : state_.enumerate(ride, opts)) {
    const auto& stops = state_.schedule(c.vehicle).stops;
    const bool close = std::ranges::any_of(
        std::array{c.pickup_pos - 1, c.pickup_pos, c.delivery_pos - 1, c.delivery_pos},
        [&](std::size_t k) { return k < stops.size() && is_close(stops[k], request, Leg::inbound); });
    if (close) {
      state_.apply(ride, c);
      return;
    }
  }
  w1_.push_back({request, ride.pickup_window});
}

void McmaEngine::expire_returns() {
  std::vector<RequestId> failed;
  std::erase_if(w1_, [&](const PendingReturn& j) {
    if (j.window.latest >= now_) return false;
    failed.push_back(j.request);
    return true;
  });
  for (auto id : failed) recover_failure(id);
}

void McmaEngine::recover_failure(RequestId request) {
  ++stats_.recoveries;
  state_.remove(request, Leg::outbound);
  if (++failures_[request] > options_.max_failures) {
    rejected_.push_back(request);
    return;
  }
  PairOptions opts = pair_options(PairMode::coupled);
  opts.insert.frozen_until = now_;
  if (insert_pair(state_, inst_->request(request), PairMode::coupled, opts)) {
    for (const auto& s : state_.schedules()) {
      if (std::ranges::any_of(s.stops, [&](const Stop& st) { return st.request == request; })) {
        promote(s.vehicle);
      }
    }
    return;
  }
  const auto& r = inst_->request(request);
  w2_.push_back({MiniCluster{{request}}, optimal_route({r}, inst_->travel)});
}

std::vector<VehicleId> McmaEngine::available_vehicles() const {
  std::vector<VehicleId> out;
  for (const auto& s : state_.schedules()) {
    const auto& last = s.stops[s.end_index() - 1];
    const bool no_interim = s.fixed_prefix_len >= s.end_index();
    if (no_interim && last.planned_time <= now_ && now_ < inst_->fleet.day_end()) {
      out.push_back(s.vehicle);
    }
  }
  return out;
}

bool McmaEngine::optional_jobs_allowed() const {
  const auto& sessions = inst_->fleet.sessions;
  if (!inside_any(sessions, now_)) return false;
  if (chronic_total_ == 0) return true;
  std::size_t placed = 0;
  for (const auto& s : state_.schedules()) {
    for (const auto& st : s.stops) {
      if (st.is_gp_arrival() && inst_->request(st.request).chronic()) ++placed;
    }
  }
  const double served = static_cast<double>(placed) / static_cast<double>(chronic_total_);
  const double open = static_cast<double>(sessions.front().earliest);
  const double close = static_cast<double>(sessions.back().latest);
  const double elapsed = std::clamp((static_cast<double>(now_) - open) / (close - open), 0.0, 1.0);
  return served - elapsed <= options_.fairness_margin;
}

std::optional<InsertionCandidate> McmaEngine::append_return(VehicleId v,
                                                            const PendingReturn& job) const {
  const auto& r = inst_->request(job.request);
  const auto ride = coupled_inbound(*inst_, r, job.window.earliest - inst_->service.gp_stay);
  InsertOptions opts;
  opts.frozen_until = now_;
  std::vector<InsertionCandidate> out;
  state_.enumerate_vehicle(ride, opts, v, out);
  if (out.empty()) return std::nullopt;
  return *std::min_element(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.key() < b.key();
  });
}

std::optional<PlacedCluster> McmaEngine::append_cluster_plan(VehicleId v,
                                                             const RoutedCluster& c) const {
  const auto& s = state_.schedule(v);
  const Seconds earliest = earliest_cluster_start(*inst_, s, c, now_);
  auto placed = place_cluster(*inst_, c, earliest, &state_.arrivals(), false);
  if (!placed) return std::nullopt;
  const Seconds back = placed->finish() + inst_->travel(c.route.last_node(), inst_->fleet.depot);
  if (back > s.stops.back().window.latest) return std::nullopt;
  return placed;
}

void McmaEngine::match_available() {
  const auto vehicles = available_vehicles();
  if (vehicles.empty()) return;
  const bool optional_ok = optional_jobs_allowed();
  if (w1_.empty() && (w2_.empty() || !optional_ok)) {
    if (!w2_.empty()) schedule_wake(now_ + inst_->service.max_window);
    return;
  }

  std::vector<std::size_t> w1_cols(w1_.size());
  for (std::size_t j = 0; j < w1_.size(); ++j) w1_cols[j] = j;
  std::vector<std::size_t> w2_cols;
  if (optional_ok) {
    for (std::size_t j = 0; j < w2_.size(); ++j) w2_cols.push_back(j);
  }

  auto build = [&]() {
    std::vector<VehicleSlot> slots;
    for (auto v : vehicles) {
      const auto& s = state_.schedule(v);
      slots.push_back({s.stops[s.end_index() - 1].node, 0});
    }
    std::vector<MustServeJob> must;
    for (auto j : w1_cols) must.push_back({inst_->request(w1_[j].request).gp, w1_[j].window});
    std::vector<OptionalJob> opt;
    for (auto j : w2_cols) opt.push_back({w2_[j].route.first_node()});
    auto p = build_costs(slots, must, opt, now_, inst_->travel);
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
      for (std::size_t j = 0; j < w1_cols.size(); ++j) {
        if (p.costs.ok(i, j) && !append_return(vehicles[i], w1_[w1_cols[j]])) p.costs.forbid(i, j);
      }
      for (std::size_t j = 0; j < w2_cols.size(); ++j) {
        const std::size_t col = w1_cols.size() + j;
        if (!append_cluster_plan(vehicles[i], w2_[w2_cols[j]])) p.costs.forbid(i, col);
      }
    }
    return p;
  };

  auto problem = build();
  VehicleAssignment assignment;
  try {
    assignment = solve_vehicle_rescheduling(problem);
  } catch (const InfeasibleW1&) {
    // Match what can be matched; the rest keeps waiting.
    CostMatrix sub(problem.vehicles(), problem.must_serve);
    for (std::size_t i = 0; i < sub.rows; ++i) {
      for (std::size_t j = 0; j < sub.cols; ++j) {
        if (problem.costs.ok(i, j)) {
          sub.set(i, j, problem.costs.at(i, j));
        } else {
          sub.forbid(i, j);
        }
      }
    }
    std::vector<std::size_t> keep;
    for (const auto& [i, j] : hungarian(sub).edges) keep.push_back(w1_cols[j]);
    std::sort(keep.begin(), keep.end());
    w1_cols = keep;
    problem = build();
    assignment = solve_vehicle_rescheduling(problem);
  }
  ++stats_.matchings;

  std::vector<bool> served_w1(w1_.size(), false);
  std::vector<bool> served_w2(w2_.size(), false);
  for (const auto& [i, j] : assignment.edges) {
    const VehicleId v = vehicles[i];
    if (j < w1_cols.size()) {
      const auto& job = w1_[w1_cols[j]];
      if (auto c = append_return(v, job)) {
        const auto& r = inst_->request(job.request);
        state_.apply(coupled_inbound(*inst_, r, job.window.earliest - inst_->service.gp_stay), *c);
        served_w1[w1_cols[j]] = true;
      }
    } else {
      const std::size_t k = w2_cols[j - w1_cols.size()];
      if (auto placed = append_cluster_plan(v, w2_[k])) {
        if (append_cluster(state_, v, *placed)) served_w2[k] = true;
      }
    }
  }
  std::vector<PendingReturn> w1_left;
  for (std::size_t j = 0; j < w1_.size(); ++j) {
    if (!served_w1[j]) w1_left.push_back(w1_[j]);
  }
  w1_ = std::move(w1_left);
  std::vector<RoutedCluster> w2_left;
  for (std::size_t j = 0; j < w2_.size(); ++j) {
    if (!served_w2[j]) w2_left.push_back(std::move(w2_[j]));
  }
  w2_ = std::move(w2_left);

  if (assignment.edges.size() < vehicles.size() && (!w1_.empty() || !w2_.empty())) {
    Seconds next = now_ + inst_->service.max_window;
    if (!inside_any(inst_->fleet.sessions, now_)) {
      next = std::min(next, std::max(now_ + 1, earliest_in(inst_->fleet.sessions, now_)));
    }
    schedule_wake(next);
  }
}

void McmaEngine::promote(VehicleId v) {
  const auto& s = state_.schedule(v);
  for (std::size_t k = s.fixed_prefix_len; k < s.end_index(); ++k) {
    const auto& st = s.stops[k];
    if (st.action != StopAction::delivery) continue;
    ++stats_.attempts;
    queue_.insert({st.planned_time, 0, v, st.request, st.leg});
  }
  state_.commit(v);
}

void McmaEngine::promote_idle() {
  for (const auto& s : state_.schedules()) {
    if (s.fixed_prefix_len < s.end_index() && s.stops[s.fixed_prefix_len - 1].planned_time <= now_) {
      promote(s.vehicle);
    }
  }
}

void McmaEngine::schedule_wake(Seconds at) {
  if (at > inst_->fleet.day_end()) return;
  if (pending_wake_ && *pending_wake_ <= at) return;
  pending_wake_ = at;
  queue_.insert({at, 1, -1, kNoRequest, Leg::outbound});
}

SolveResult McmaEngine::finish() && {
  SolveResult result;
  auto w1 = std::move(w1_);
  w1_.clear();
  for (const auto& job : w1) {
    state_.remove(job.request, Leg::outbound);
    PairOptions opts = pair_options(PairMode::coupled);
    opts.insert.frozen_until = now_;
    if (!insert_pair(state_, inst_->request(job.request), PairMode::coupled, opts)) {
      rejected_.push_back(job.request);
    }
  }
  for (const auto& c : w2_) {
    for (auto id : c.cluster.members) rejected_.push_back(id);
  }
  w2_.clear();
  result.rejected = std::move(rejected_);
  insert_walk_ins(state_, result.rejected);
  result.schedules = std::move(state_).release();
  normalize(result);
  return result;
}

SolveResult run_mcma(const Instance& inst, const McmaOptions& options, McmaStats* stats) {
  std::vector<RequestPair> chronic;
  for (const auto& r : inst.requests) {
    if (r.chronic()) chronic.push_back(r);
  }
  McmaEngine engine(inst, options);
  engine.init(route_clusters(
      inst, build_miniclusters(chronic, inst.travel, inst.fleet.capacity, inst.service.rho)));
  while (engine.step()) {
  }
  if (stats) *stats = engine.stats();
  return std::move(engine).finish();
}

}  // namespace darpcf
