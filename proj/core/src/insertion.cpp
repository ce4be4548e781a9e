#include "darpcf/insertion.hpp"

#include <algorithm>
#include <stdexcept>

namespace darpcf {

// ---------------------------------------------------------------- arrivals

ArrivalIndex::ArrivalIndex(const Instance& inst, const Schedules& schedules)
    : by_gp_(inst.travel.size()) {
  for (const auto& s : schedules) {
    for (const auto& st : s.stops) {
      if (st.is_gp_arrival()) by_gp_[static_cast<std::size_t>(st.node)].push_back(st.planned_time);
    }
  }
  for (auto& v : by_gp_) std::sort(v.begin(), v.end());
}

const std::vector<Seconds>& ArrivalIndex::arrivals(NodeId gp) const {
  return by_gp_[static_cast<std::size_t>(gp)];
}

bool ArrivalIndex::admits(const std::vector<Change>& changes, int limit, Seconds window) const {
  std::vector<NodeId> gps;
  for (const auto& c : changes) {
    if (c.after && c.before != c.after) gps.push_back(c.gp);
  }
  std::sort(gps.begin(), gps.end());
  gps.erase(std::unique(gps.begin(), gps.end()), gps.end());

  std::vector<Seconds> local;
  for (const NodeId gp : gps) {
    Seconds lo = kNever;
    Seconds hi = -kNever;
    for (const auto& c : changes) {
      if (c.gp == gp && c.after && c.before != c.after) {
        lo = std::min(lo, *c.after);
        hi = std::max(hi, *c.after);
      }
    }
    // Any window holding a new arrival lies within (lo - window, hi + window).
    const auto& all = arrivals(gp);
    auto first = std::lower_bound(all.begin(), all.end(), lo - window + 1);
    auto last = std::upper_bound(all.begin(), all.end(), hi + window - 1);
    local.assign(first, last);
    for (const auto& c : changes) {
      if (c.gp != gp || c.before == c.after) continue;
      if (c.before) {
        auto it = std::find(local.begin(), local.end(), *c.before);
        if (it != local.end()) local.erase(it);
      }
      if (c.after) local.push_back(*c.after);
    }
    std::sort(local.begin(), local.end());
    std::size_t from = 0;
    for (std::size_t to = 0; to < local.size(); ++to) {
      while (local[to] - local[from] >= window) ++from;
      if (static_cast<int>(to - from + 1) > limit) return false;
    }
  }
  return true;
}

void ArrivalIndex::apply(const std::vector<Change>& changes) {
  for (const auto& c : changes) {
    if (c.before == c.after) continue;
    auto& v = by_gp_[static_cast<std::size_t>(c.gp)];
    if (c.before) {
      auto it = std::lower_bound(v.begin(), v.end(), *c.before);
      if (it == v.end() || *it != *c.before) throw std::logic_error("arrival index out of sync");
      v.erase(it);
    }
    if (c.after) v.insert(std::upper_bound(v.begin(), v.end(), *c.after), *c.after);
  }
}

// ---------------------------------------------------------------- rides

RideSpec fixed_ride(const Instance& inst, const RequestPair& r, Leg leg) {
  RideSpec s;
  s.request = r.id;
  s.leg = leg;
  s.pickup = r.pickup_node(leg);
  s.delivery = r.delivery_node(leg);
  s.max_ride = r.max_ride(leg);
  const Seconds direct = inst.direct_time(r, leg);
  if (leg == Leg::outbound) {
    s.delivery_window = r.outbound_window.value_or(fixed_arrival_window(r.appointment, inst.service));
    s.pickup_window = {s.delivery_window.earliest - direct, s.delivery_window.latest - direct};
  } else {
    s.pickup_window =
        r.inbound_window.value_or(fixed_departure_window(r.appointment, inst.service));
    s.delivery_window = {s.pickup_window.earliest + direct, s.pickup_window.latest + s.max_ride};
  }
  return s;
}

RideSpec flexible_outbound(const Instance& inst, const RequestPair& r) {
  RideSpec s;
  s.request = r.id;
  s.leg = Leg::outbound;
  s.pickup = r.home;
  s.delivery = r.gp;
  s.max_ride = r.max_ride_outbound;
  s.session_delivery = true;
  const auto& sessions = inst.fleet.sessions;
  s.delivery_window = {sessions.front().earliest, sessions.back().latest};
  const Seconds direct = inst.direct_time(r, Leg::outbound);
  s.pickup_window = {s.delivery_window.earliest - direct, s.delivery_window.latest - direct};
  return s;
}

RideSpec coupled_inbound(const Instance& inst, const RequestPair& r, Seconds arrival) {
  RideSpec s;
  s.request = r.id;
  s.leg = Leg::inbound;
  s.pickup = r.gp;
  s.delivery = r.home;
  s.max_ride = r.max_ride_inbound;
  s.pickup_window = coupling_window(arrival, inst.service);
  s.delivery_window = {s.pickup_window.earliest + inst.direct_time(r, Leg::inbound),
                       s.pickup_window.latest + s.max_ride};
  return s;
}

// ---------------------------------------------------------------- state

RoutingState::RoutingState(const Instance& inst, Schedules schedules)
    : inst_(&inst), schedules_(std::move(schedules)), arrivals_(inst, schedules_) {}

void RoutingState::enumerate_vehicle(const RideSpec& ride, const InsertOptions& options,
                                     VehicleId v, std::vector<InsertionCandidate>& out) const {
  const auto& s = schedules_[static_cast<std::size_t>(v)];
  const auto& t = inst_->travel;
  const auto& svc = inst_->service;
  const int cap = inst_->fleet.capacity;
  const auto& st = s.stops;
  const std::size_t end = s.end_index();
  const std::size_t first =
      first_open_position(s, t, options.frozen_until, options.respect_fixed_prefix);
  if (first > end) return;

  const auto slack = time_slacks(s, t);
  const auto partner = partner_pickups(s);
  const bool arrival = ride.leg == Leg::outbound;
  const NodeId P = ride.pickup;
  const NodeId D = ride.delivery;

  std::vector<Seconds> shifted(st.size(), 0);  // times with only the pickup inserted
  std::vector<Seconds> tail(st.size(), 0);
  std::vector<ArrivalIndex::Change> prefix_changes;
  std::vector<ArrivalIndex::Change> changes;

  for (std::size_t p = first; p <= end; ++p) {
    const Stop& prev = st[p - 1];
    const Seconds depart = std::max(prev.planned_time, options.frozen_until);
    const Seconds pick = std::max(ride.pickup_window.earliest, depart + t(prev.node, P));
    if (pick > ride.pickup_window.latest) break;
    if (prev.load_after + 1 > cap) continue;
    if (std::max(st[p].planned_time, pick + t(P, st[p].node)) - st[p].planned_time > slack[p]) {
      continue;
    }
    const Seconds pick_detour_base = t(prev.node, st[p].node);

    prefix_changes.clear();
    NodeId cur_node = P;
    Seconds cur_time = pick;
    for (std::size_t q = p; q <= end; ++q) {
      // Option: deliver right before stop q.
      const Seconds reach = cur_time + t(cur_node, D);
      if (reach > ride.delivery_window.latest || reach - pick > ride.max_ride) break;
      Seconds drop = std::max(ride.delivery_window.earliest, reach);
      if (ride.session_delivery) drop = earliest_in(inst_->fleet.sessions, drop);
      if (drop > ride.delivery_window.latest || drop - pick > ride.max_ride) break;

      bool feasible =
          std::max(st[q].planned_time, drop + t(D, st[q].node)) - st[q].planned_time <= slack[q];
      if (feasible) {
        changes = prefix_changes;
        if (arrival) changes.push_back({D, std::nullopt, drop});
        NodeId prev_node = D;
        Seconds prev_time = drop;
        for (std::size_t k = q; k <= end; ++k) {
          const Stop& sk = st[k];
          const Seconds nt = std::max(sk.planned_time, prev_time + t(prev_node, sk.node));
          if (nt == sk.planned_time) break;
          if (nt > sk.window.latest) {
            feasible = false;
            break;
          }
          if (partner[k] >= 0) {
            const auto j = static_cast<std::size_t>(partner[k]);
            const Seconds pj = j < p ? st[j].planned_time : (j < q ? shifted[j] : tail[j]);
            if (nt - pj > sk.max_ride) {
              feasible = false;
              break;
            }
          }
          if (sk.is_gp_arrival()) changes.push_back({sk.node, sk.planned_time, nt});
          tail[k] = nt;
          prev_node = sk.node;
          prev_time = nt;
        }
        if (feasible && !changes.empty()) {
          feasible = arrivals_.admits(changes, svc.congestion_limit, svc.congestion_window);
        }
      }
      if (feasible) {
        Seconds delta = 0;
        if (q == p) {
          delta = t(prev.node, P) + t(P, D) + t(D, st[p].node) - pick_detour_base;
        } else {
          delta = t(prev.node, P) + t(P, st[p].node) - pick_detour_base +
                  t(st[q - 1].node, D) + t(D, st[q].node) - t(st[q - 1].node, st[q].node);
        }
        out.push_back({v, p, q, delta, pick, drop});
      }

      if (q == end) break;
      // Advance: stop q is served with the new passenger on board.
      const Stop& sq = st[q];
      const Seconds nt = std::max(sq.planned_time, cur_time + t(cur_node, sq.node));
      if (nt > sq.window.latest || sq.load_after + 1 > cap) break;
      if (partner[q] >= 0) {
        const auto j = static_cast<std::size_t>(partner[q]);
        const Seconds pj = j < p ? st[j].planned_time : shifted[j];
        if (nt - pj > sq.max_ride) break;
      }
      if (sq.is_gp_arrival() && nt != sq.planned_time) {
        prefix_changes.push_back({sq.node, sq.planned_time, nt});
      }
      shifted[q] = nt;
      cur_node = sq.node;
      cur_time = nt;
    }
  }
}

std::vector<InsertionCandidate> RoutingState::enumerate(const RideSpec& ride,
                                                        const InsertOptions& options) const {
  std::vector<InsertionCandidate> out;
  for (const auto& s : schedules_) {
    const auto v = s.vehicle;
    if (!options.allowed.empty() && !options.allowed[static_cast<std::size_t>(v)]) continue;
    enumerate_vehicle(ride, options, v, out);
  }
  std::sort(out.begin(), out.end(),
            [](const InsertionCandidate& a, const InsertionCandidate& b) { return a.key() < b.key(); });
  return out;
}

std::optional<InsertionCandidate> RoutingState::best(const RideSpec& ride,
                                                     const InsertOptions& options) const {
  std::optional<InsertionCandidate> best;
  std::vector<InsertionCandidate> buf;
  for (const auto& s : schedules_) {
    const auto v = s.vehicle;
    if (!options.allowed.empty() && !options.allowed[static_cast<std::size_t>(v)]) continue;
    buf.clear();
    enumerate_vehicle(ride, options, v, buf);
    for (const auto& c : buf) {
      if (!best || c.key() < best->key()) best = c;
    }
  }
  return best;
}

RoutingState::Undo RoutingState::apply(const RideSpec& ride, const InsertionCandidate& c) {
  auto& s = schedules_[static_cast<std::size_t>(c.vehicle)];
  Undo undo{c.vehicle, s, {}};
  const auto& t = inst_->travel;

  Stop pickup;
  pickup.node = ride.pickup;
  pickup.action = StopAction::pickup;
  pickup.request = ride.request;
  pickup.leg = ride.leg;
  pickup.planned_time = c.pickup_time;
  pickup.window = ride.pickup_window;
  Stop delivery = pickup;
  delivery.node = ride.delivery;
  delivery.action = StopAction::delivery;
  delivery.planned_time = c.delivery_time;
  delivery.window = ride.session_delivery ? TimeWindow{c.delivery_time, c.delivery_time}
                                          : ride.delivery_window;
  delivery.max_ride = ride.max_ride;

  const std::size_t d_index = c.delivery_pos + 1;
  s.stops.insert(s.stops.begin() + static_cast<std::ptrdiff_t>(c.pickup_pos), pickup);
  s.stops.insert(s.stops.begin() + static_cast<std::ptrdiff_t>(d_index), delivery);
  if (ride.leg == Leg::outbound) undo.changes.push_back({ride.delivery, std::nullopt, c.delivery_time});

  for (std::size_t k = c.pickup_pos + 1; k < s.stops.size(); ++k) {
    auto& sk = s.stops[k];
    const auto& prev = s.stops[k - 1];
    if (k == d_index) continue;
    const Seconds nt = std::max(sk.planned_time, prev.planned_time + t(prev.node, sk.node));
    if (nt == sk.planned_time && k > d_index) break;
    if (sk.is_gp_arrival() && nt != sk.planned_time) {
      undo.changes.push_back({sk.node, sk.planned_time, nt});
    }
    sk.planned_time = nt;
  }
  recompute_loads(s);
  arrivals_.apply(undo.changes);
  return undo;
}

void RoutingState::undo(Undo&& u) {
  std::vector<ArrivalIndex::Change> reverse;
  reverse.reserve(u.changes.size());
  for (auto it = u.changes.rbegin(); it != u.changes.rend(); ++it) {
    reverse.push_back({it->gp, it->after, it->before});
  }
  arrivals_.apply(reverse);
  schedules_[static_cast<std::size_t>(u.vehicle)] = std::move(u.before);
}

bool RoutingState::remove(RequestId request, Leg leg) {
  for (auto& s : schedules_) {
    for (const auto& st : s.stops) {
      if (st.serves_request() && st.request == request && st.leg == leg) {
        if (leg == Leg::outbound) {
          const auto it = std::find_if(s.stops.begin(), s.stops.end(), [&](const Stop& x) {
            return x.is_gp_arrival() && x.request == request;
          });
          arrivals_.apply({{it->node, it->planned_time, std::nullopt}});
        }
        return remove_leg(s, request, leg);
      }
    }
  }
  return false;
}

void RoutingState::commit(VehicleId v) {
  auto& s = schedules_[static_cast<std::size_t>(v)];
  s.fixed_prefix_len = s.end_index();
}

void RoutingState::replace(VehicleId v, Schedule s) {
  std::vector<ArrivalIndex::Change> changes;
  for (const auto& st : schedules_[static_cast<std::size_t>(v)].stops) {
    if (st.is_gp_arrival()) changes.push_back({st.node, st.planned_time, std::nullopt});
  }
  for (const auto& st : s.stops) {
    if (st.is_gp_arrival()) changes.push_back({st.node, std::nullopt, st.planned_time});
  }
  arrivals_.apply(changes);
  schedules_[static_cast<std::size_t>(v)] = std::move(s);
}

// ---------------------------------------------------------------- pairs

std::optional<PairPlan> best_pair(RoutingState& state, const RequestPair& r, PairMode mode,
                                  const PairOptions& options) {
  const auto& inst = state.instance();
  const RideSpec out_ride =
      mode == PairMode::coupled ? flexible_outbound(inst, r) : fixed_ride(inst, r, Leg::outbound);
  const auto outs = state.enumerate(out_ride, options.insert);

  std::optional<PairPlan> best;
  auto better = [](const PairPlan& a, const PairPlan& b) {
    return std::tuple(a.total(), a.outbound.key(), a.inbound.key()) <
           std::tuple(b.total(), b.outbound.key(), b.inbound.key());
  };
  std::size_t probes = 0;
  for (const auto& out : outs) {
    if (probes++ >= options.outbound_probes) break;
    if (best && out.delta_cost >= best->total()) break;
    auto undo = state.apply(out_ride, out);
    const RideSpec in_ride = mode == PairMode::coupled
                                 ? coupled_inbound(inst, r, out.delivery_time)
                                 : fixed_ride(inst, r, Leg::inbound);
    if (auto in = state.best(in_ride, options.insert)) {
      PairPlan plan{out, *in};
      if (!best || better(plan, *best)) best = plan;
    }
    state.undo(std::move(undo));
  }
  return best;
}

bool insert_pair(RoutingState& state, const RequestPair& r, PairMode mode,
                 const PairOptions& options) {
  const auto plan = best_pair(state, r, mode, options);
  if (!plan) return false;
  const auto& inst = state.instance();
  const RideSpec out_ride =
      mode == PairMode::coupled ? flexible_outbound(inst, r) : fixed_ride(inst, r, Leg::outbound);
  state.apply(out_ride, plan->outbound);
  const RideSpec in_ride = mode == PairMode::coupled
                               ? coupled_inbound(inst, r, plan->outbound.delivery_time)
                               : fixed_ride(inst, r, Leg::inbound);
  state.apply(in_ride, plan->inbound);
  return true;
}

}  // namespace darpcf
