#include "darpcf/assignment.hpp"

#include <algorithm>
#include <limits>

namespace darpcf {

namespace {

/// Rectangular assignment with rows <= cols: every row gets a distinct
/// column, minimizing the total. Returns the column of each row.
std::vector<std::size_t> assign_rows(const std::vector<std::int64_t>& a, std::size_t n,
                                     std::size_t m) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0);
  std::vector<std::int64_t> v(m + 1, 0);
  std::vector<std::size_t> p(m + 1, 0);
  std::vector<std::size_t> way(m + 1, 0);
  std::vector<std::int64_t> minv(m + 1);
  std::vector<bool> used(m + 1);
  auto cell = [&](std::size_t i, std::size_t j) { return a[(i - 1) * m + (j - 1)]; };

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cell(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of[p[j] - 1] = j - 1;
  }
  return col_of;
}

}  // namespace

Matching hungarian(const CostMatrix& m) {
  Matching result;
  if (m.rows == 0 || m.cols == 0) return result;
  const bool transpose = m.rows > m.cols;
  const std::size_t n = transpose ? m.cols : m.rows;
  const std::size_t k = transpose ? m.rows : m.cols;

  // Forbidden cells cost more than any matching of allowed cells can differ
  // by, so the optimum first maximizes the number of allowed edges.
  std::int64_t largest = 0;
  for (std::size_t c = 0; c < m.cost.size(); ++c) {
    if (m.allowed[c]) largest = std::max(largest, m.cost[c] < 0 ? -m.cost[c] : m.cost[c]);
  }
  const std::int64_t big = 2 * (largest + 1) * static_cast<std::int64_t>(n + 1);

  std::vector<std::int64_t> a(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t r = transpose ? j : i;
      const std::size_t c = transpose ? i : j;
      a[i * k + j] = m.ok(r, c) ? m.at(r, c) : big;
    }
  }
  const auto col_of = assign_rows(a, n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = transpose ? col_of[i] : i;
    const std::size_t c = transpose ? i : col_of[i];
    if (!m.ok(r, c)) continue;
    result.edges.emplace_back(r, c);
    result.cost += m.at(r, c);
  }
  std::sort(result.edges.begin(), result.edges.end());
  return result;
}

AssignmentProblem build_costs(const std::vector<VehicleSlot>& vehicles,
                              const std::vector<MustServeJob>& must_serve,
                              const std::vector<OptionalJob>& optional, Seconds now,
                              const TravelMatrix& t) {
  AssignmentProblem p;
  p.must_serve = must_serve.size();
  p.optional = optional.size();
  p.costs = CostMatrix(vehicles.size(), must_serve.size() + optional.size());
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    const auto& v = vehicles[i];
    for (std::size_t j = 0; j < must_serve.size(); ++j) {
      const auto& job = must_serve[j];
      const Seconds drive = t(v.location, job.pickup);
      if (now + v.ready_in + drive > job.window.latest) {
        p.costs.forbid(i, j);
      } else {
        p.costs.set(i, j, std::max(drive, job.window.earliest - now - v.ready_in));
      }
    }
    for (std::size_t j = 0; j < optional.size(); ++j) {
      p.costs.set(i, must_serve.size() + j, t(v.location, optional[j].pickup));
    }
  }
  return p;
}

TransformedCosts transform_costs(const AssignmentProblem& p) {
  const auto& c = p.costs;
  if (p.must_serve > 0) {
    CostMatrix sub(c.rows, p.must_serve);
    for (std::size_t i = 0; i < c.rows; ++i) {
      for (std::size_t j = 0; j < p.must_serve; ++j) {
        if (c.ok(i, j)) {
          sub.set(i, j, c.at(i, j));
        } else {
          sub.forbid(i, j);
        }
      }
    }
    if (hungarian(sub).edges.size() < p.must_serve) {
      throw InfeasibleW1("return rides cannot all be matched to a vehicle");
    }
  }
  TransformedCosts out;
  out.costs = c;
  std::int64_t largest = 0;
  for (std::size_t k = 0; k < c.cost.size(); ++k) {
    if (c.allowed[k]) largest = std::max(largest, c.cost[k]);
  }
  out.bound = largest + 1;
  out.shift = static_cast<std::int64_t>(c.cols) * out.bound;
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = p.must_serve; j < c.cols; ++j) {
      out.costs.cost[i * c.cols + j] += out.shift;
    }
  }
  return out;
}

VehicleAssignment solve_vehicle_rescheduling(const AssignmentProblem& p) {
  const auto transformed = transform_costs(p);
  const auto m = hungarian(transformed.costs);
  VehicleAssignment out;
  out.edges = m.edges;
  for (const auto& [i, j] : m.edges) out.cost += p.costs.at(i, j);
  return out;
}

}  // namespace darpcf
