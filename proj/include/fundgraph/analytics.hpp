#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fundgraph/graph.hpp"

namespace fundgraph {

struct RaiseTimeline {
  NodeId founder_id;
  std::int64_t wishlist_first_add = 0;   // UTC seconds
  std::int64_t last_status_update = 0;   // UTC seconds
  // (week index, fraction of the raise's total emails sent that week)
  std::vector<std::pair<int, double>> weekly_email_share;
  // (week index, fraction of eventual investors committed); empty when the
  // raise had no eventual investors — such timelines are excluded from fits
  std::vector<std::pair<int, double>> committed_by_week;
};

// Shares must sum to 1 within 1e-9 and committed fractions be non-decreasing.
void validate_timeline(const RaiseTimeline& t);

// Whole days (floor) between wishlist start and last status update.
long fundraising_period_days(const RaiseTimeline& t);

struct CubicFit {
  std::array<double, 4> coefficients{};  // ascending powers: c0 + c1 x + c2 x^2 + c3 x^3
  double residual_norm = 0;
};

// Unweighted least-squares cubic. Throws SingularDesign when underdetermined
// (< 5 points or < 4 distinct abscissae).
CubicFit volume_curve_fit(const std::vector<std::pair<double, double>>& points);

// Pooled (committed fraction, email share) points across timelines, joined on
// week index; timelines without committed data contribute nothing.
std::vector<std::pair<double, double>> volume_points(const std::vector<RaiseTimeline>& timelines);

}  // namespace fundgraph
