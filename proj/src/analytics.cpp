#include "fundgraph/analytics.hpp"

#include <cmath>
#include <map>
#include <set>

#include "fundgraph/errors.hpp"
#include "fundgraph/ols.hpp"

namespace fundgraph {

void validate_timeline(const RaiseTimeline& t) {
  if (t.last_status_update < t.wishlist_first_add) {
    throw InvalidTimeline("last status update precedes wishlist start for " + t.founder_id);
  }
  if (!t.weekly_email_share.empty()) {
    double sum = 0.0;
    for (const auto& [week, share] : t.weekly_email_share) sum += share;
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw InvalidTimeline("weekly email shares sum to " + std::to_string(sum) +
                            " for " + t.founder_id);
    }
  }
  double prev = -1.0;
  for (const auto& [week, fraction] : t.committed_by_week) {
    if (fraction < prev) {
      throw InvalidTimeline("committed fraction decreases for " + t.founder_id);
    }
    if (fraction < 0.0 || fraction > 1.0) {
      throw InvalidTimeline("committed fraction out of [0, 1] for " + t.founder_id);
    }
    prev = fraction;
  }
}

long fundraising_period_days(const RaiseTimeline& t) {
  if (t.last_status_update < t.wishlist_first_add) {
    throw InvalidTimeline("last status update precedes wishlist start for " + t.founder_id);
  }
  return static_cast<long>((t.last_status_update - t.wishlist_first_add) / 86400);
}

CubicFit volume_curve_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 5) {
    throw SingularDesign("cubic fit needs at least 5 points, got " +
                         std::to_string(points.size()));
  }
  std::set<double> distinct;
  for (const auto& [x, y] : points) {
    if (x < 0.0 || x > 1.0) throw InvalidInput("committed fraction out of [0, 1]");
    distinct.insert(x);
  }
  if (distinct.size() < 4) {
    throw SingularDesign("cubic fit needs 4 distinct abscissae, got " +
                         std::to_string(distinct.size()));
  }

  std::vector<std::vector<double>> vandermonde;
  std::vector<double> target;
  vandermonde.reserve(points.size());
  for (const auto& [x, y] : points) {
    vandermonde.push_back({x, x * x, x * x * x});
    target.push_back(y);
  }
  const OlsResult fit = ols_fit(vandermonde, target, {"x", "x^2", "x^3"});

  CubicFit result;
  result.coefficients = {fit.intercept, fit.coefficients[0], fit.coefficients[1],
                         fit.coefficients[2]};
  result.residual_norm = fit.residual_norm;
  return result;
}

std::vector<std::pair<double, double>> volume_points(
    const std::vector<RaiseTimeline>& timelines) {
  std::vector<std::pair<double, double>> points;
  for (const RaiseTimeline& t : timelines) {
    if (t.committed_by_week.empty()) continue;  // no eventual investors
    std::map<int, double> committed(t.committed_by_week.begin(), t.committed_by_week.end());
    for (const auto& [week, share] : t.weekly_email_share) {
      auto it = committed.find(week);
      if (it != committed.end()) points.emplace_back(it->second, share);
    }
  }
  return points;
}

}  // namespace fundgraph
