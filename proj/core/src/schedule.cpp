#include "darpcf/schedule.hpp"

#include <algorithm>
#include <unordered_map>

namespace darpcf {

Schedules make_empty_schedules(const Instance& inst) {
  const auto& f = inst.fleet;
  Schedules out;
  out.reserve(static_cast<std::size_t>(f.vehicles));
  for (VehicleId v = 0; v < f.vehicles; ++v) {
    Schedule s;
    s.vehicle = v;
    Stop start;
    start.node = f.depot;
    start.planned_time = f.day_start;
    start.window = {f.day_start, f.day_start};
    Stop end = start;
    end.window = {f.day_start, f.day_end()};
    s.stops = {start, end};
    s.fixed_prefix_len = 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Seconds> time_slacks(const Schedule& s, const TravelMatrix& t) {
  const auto n = s.stops.size();
  std::vector<Seconds> slack(n, 0);
  if (n == 0) return slack;
  slack[n - 1] = s.stops[n - 1].window.latest - s.stops[n - 1].planned_time;
  for (std::size_t k = n - 1; k-- > 0;) {
    const auto& cur = s.stops[k];
    const auto& next = s.stops[k + 1];
    const Seconds wait = next.planned_time - (cur.planned_time + t(cur.node, next.node));
    slack[k] = std::min(cur.window.latest - cur.planned_time, wait + slack[k + 1]);
  }
  return slack;
}

Seconds time_slack(const Schedule& s, const TravelMatrix& t, std::size_t position) {
  Seconds downstream = s.stops.back().window.latest - s.stops.back().planned_time;
  for (std::size_t k = s.stops.size() - 1; k-- > position;) {
    const auto& cur = s.stops[k];
    const auto& next = s.stops[k + 1];
    const Seconds wait = next.planned_time - (cur.planned_time + t(cur.node, next.node));
    downstream = std::min(cur.window.latest - cur.planned_time, wait + downstream);
  }
  return downstream;
}

std::vector<std::ptrdiff_t> partner_pickups(const Schedule& s) {
  std::vector<std::ptrdiff_t> out(s.stops.size(), -1);
  std::unordered_map<std::int64_t, std::ptrdiff_t> open;
  auto key = [](const Stop& st) {
    return static_cast<std::int64_t>(st.request) * 2 + static_cast<std::int64_t>(st.leg);
  };
  for (std::size_t i = 0; i < s.stops.size(); ++i) {
    const auto& st = s.stops[i];
    if (st.action == StopAction::pickup) {
      open[key(st)] = static_cast<std::ptrdiff_t>(i);
    } else if (st.action == StopAction::delivery) {
      if (auto it = open.find(key(st)); it != open.end()) {
        out[i] = it->second;
        open.erase(it);
      }
    }
  }
  return out;
}

VehiclePosition vehicle_position(const Schedule& s, const TravelMatrix& t, Seconds at) {
  const auto n = s.stops.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& next = s.stops[i + 1];
    const Seconds leg = t(s.stops[i].node, next.node);
    const Seconds depart = next.planned_time - leg;
    if (at < depart) {
      return {i, i, 0.0};
    }
    if (at < next.planned_time) {
      const double frac = leg > 0 ? static_cast<double>(at - depart) / static_cast<double>(leg) : 1.0;
      return {i, i + 1, frac};
    }
  }
  return {n - 1, n - 1, 0.0};
}

std::size_t first_open_position(const Schedule& s, const TravelMatrix& t, Seconds frozen_until,
                                bool respect_fixed_prefix) {
  const std::size_t end = s.end_index();
  // A vehicle that has already finished its tour is back at the depot for
  // good; an unused one is still free to leave.
  if (end > 1 && s.stops[end].planned_time < frozen_until) return end + 1;
  std::size_t k = 1;
  while (k < end && s.stops[k].planned_time < frozen_until) {
    ++k;
  }
  std::size_t pos = k;
  if (k < end) {
    const Seconds depart = s.stops[k].planned_time - t(s.stops[k - 1].node, s.stops[k].node);
    if (frozen_until > depart) {
      pos = k + 1;
    }
  }
  if (respect_fixed_prefix) {
    pos = std::max(pos, std::min(s.fixed_prefix_len, end));
  }
  return pos;
}

void recompute_loads(Schedule& s) {
  int load = 0;
  for (auto& st : s.stops) {
    if (st.action == StopAction::pickup) {
      ++load;
    } else if (st.action == StopAction::delivery) {
      --load;
    }
    st.load_after = load;
  }
}

bool remove_leg(Schedule& s, RequestId request, Leg leg) {
  auto matches = [&](const Stop& st) {
    return st.serves_request() && st.request == request && st.leg == leg;
  };
  std::size_t in_prefix = 0;
  for (std::size_t i = 0; i < s.fixed_prefix_len && i < s.stops.size(); ++i) {
    if (matches(s.stops[i])) ++in_prefix;
  }
  if (std::erase_if(s.stops, matches) == 0) {
    return false;
  }
  s.fixed_prefix_len -= in_prefix;
  recompute_loads(s);
  return true;
}

Seconds drive_time(const Schedule& s, const TravelMatrix& t) {
  Seconds total = 0;
  for (std::size_t i = 0; i + 1 < s.stops.size(); ++i) {
    total += t(s.stops[i].node, s.stops[i + 1].node);
  }
  return total;
}

}  // namespace darpcf
