#pragma once

#include <string>
#include <vector>

namespace fundgraph {

struct OlsResult {
  std::vector<double> coefficients;  // one per feature column
  double intercept = 0;
  double r_squared = 0;       // 1 - SS_res / SS_tot; 0 when SS_tot is 0
  double residual_norm = 0;   // sqrt(SS_res)
};

// Ordinary least squares with intercept via the normal equations.
// Throws SingularDesign naming the offending column when the design is
// rank-deficient (e.g. collinear or constant features).
OlsResult ols_fit(const std::vector<std::vector<double>>& features,  // N rows x k
                  const std::vector<double>& target,
                  const std::vector<std::string>& column_names = {});

// Residuals of a fit against the data it was produced from.
std::vector<double> ols_residuals(const OlsResult& fit,
                                  const std::vector<std::vector<double>>& features,
                                  const std::vector<double>& target);

}  // namespace fundgraph
