#include "darpcf/intra_route.hpp"

#include <algorithm>
#include <array>

namespace darpcf {

Seconds route_duration(const IntraRoute& route) {
  if (route.stops.empty()) return 0;
  return route.stops.back().time - route.stops.front().time;
}

namespace {

class OrderSearch {
 public:
  OrderSearch(const std::vector<RequestPair>& members, const TravelMatrix& t, SearchStats* stats)
      : members_(members), t_(t), stats_(stats), labels_(2 * members.size()) {
    nodes_.resize(labels_);
    for (std::size_t k = 0; k < members.size(); ++k) {
      nodes_[2 * k] = members[k].home;
      nodes_[2 * k + 1] = members[k].gp;
    }
    pickup_time_.assign(members.size(), 0);
    current_.reserve(labels_);
  }

  bool run() {
    for (std::size_t k = 0; k < members_.size(); ++k) {
      const std::size_t label = 2 * k;
      visit(label, 0);
    }
    return !best_.empty();
  }

  [[nodiscard]] const std::vector<std::size_t>& best() const { return best_; }
  [[nodiscard]] NodeId node(std::size_t label) const { return nodes_[label]; }

 private:
  void visit(std::size_t label, Seconds at) {
    if (stats_) ++stats_->nodes;
    const std::size_t k = label / 2;
    if (label % 2 == 0) {
      pickup_time_[k] = at;
    } else if (at - pickup_time_[k] > members_[k].max_ride_outbound) {
      return;
    }
    done_ |= std::uint32_t{1} << label;
    current_.push_back(label);
    if (current_.size() == labels_) {
      if (stats_) ++stats_->leaves;
      if (at < best_cost_) {
        best_cost_ = at;
        best_ = current_;
      }
    } else if (!prune(label, at)) {
      for (std::size_t next = 0; next < labels_; ++next) {
        if (done_ & (std::uint32_t{1} << next)) continue;
        if (next % 2 == 1 && !(done_ & (std::uint32_t{1} << (next - 1)))) continue;
        visit(next, at + t_(nodes_[label], nodes_[next]));
      }
    }
    current_.pop_back();
    done_ &= ~(std::uint32_t{1} << label);
  }

  /// Lower bounds that hold under the triangle inequality: every remaining
  /// stop is reached no earlier than by driving there directly.
  [[nodiscard]] bool prune(std::size_t label, Seconds at) const {
    const NodeId here = nodes_[label];
    Seconds farthest = 0;
    for (std::size_t other = 0; other < labels_; ++other) {
      if (done_ & (std::uint32_t{1} << other)) continue;
      const Seconds reach = t_(here, nodes_[other]);
      farthest = std::max(farthest, reach);
      if (other % 2 == 1 && (done_ & (std::uint32_t{1} << (other - 1)))) {
        const std::size_t k = other / 2;
        if (at + reach - pickup_time_[k] > members_[k].max_ride_outbound) return true;
      }
    }
    return at + farthest >= best_cost_;
  }

  const std::vector<RequestPair>& members_;
  const TravelMatrix& t_;
  SearchStats* stats_;
  std::size_t labels_;
  std::vector<NodeId> nodes_;
  std::vector<Seconds> pickup_time_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  Seconds best_cost_ = kNever;
  std::uint32_t done_ = 0;
};

}  // namespace

IntraRoute optimal_route(const std::vector<RequestPair>& members, const TravelMatrix& t,
                         SearchStats* stats) {
  if (members.empty()) return {};
  if (members.size() > 15) {
    throw std::invalid_argument("cluster too large for exact routing");
  }
  OrderSearch search(members, t, stats);
  if (!search.run()) {
    throw InfeasibleCluster("no pickup/drop order respects the maximum ride times");
  }
  IntraRoute route;
  Seconds at = 0;
  NodeId prev = search.node(search.best().front());
  for (const auto label : search.best()) {
    const auto& r = members[label / 2];
    at += t(prev, search.node(label));
    prev = search.node(label);
    route.stops.push_back(
        {r.id, label % 2 == 0 ? StopAction::pickup : StopAction::delivery, prev, at});
  }
  return route;
}

std::vector<RoutedCluster> route_clusters(const Instance& inst,
                                          const std::vector<MiniCluster>& clusters) {
  std::vector<RoutedCluster> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    std::vector<RequestPair> members;
    members.reserve(c.members.size());
    for (auto id : c.members) members.push_back(inst.request(id));
    try {
      out.push_back({c, optimal_route(members, inst.travel)});
    } catch (const InfeasibleCluster&) {
      for (const auto& m : members) {
        out.push_back({MiniCluster{{m.id}}, optimal_route({m}, inst.travel)});
      }
    }
  }
  return out;
}

}  // namespace darpcf
