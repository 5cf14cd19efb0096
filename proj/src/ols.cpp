#include "fundgraph/ols.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>

#include "fundgraph/errors.hpp"

namespace fundgraph {

namespace {

std::string column_label(std::size_t augmented_index,
                         const std::vector<std::string>& names) {
  if (augmented_index == 0) return "intercept";
  const std::size_t k = augmented_index - 1;
  if (k < names.size()) return names[k];
  return "column " + std::to_string(k);
}

}  // namespace

OlsResult ols_fit(const std::vector<std::vector<double>>& features,
                  const std::vector<double>& target,
                  const std::vector<std::string>& column_names) {
  const std::size_t n = features.size();
  if (n == 0 || n != target.size()) {
    throw InvalidInput("ols_fit: feature rows and target length must match and be nonzero");
  }
  const std::size_t k = features[0].size();
  for (const auto& row : features) {
    if (row.size() != k) throw InvalidInput("ols_fit: ragged feature matrix");
  }
  const std::size_t dim = k + 1;  // intercept first
  if (n <= dim) {
    throw SingularDesign("ols_fit: " + std::to_string(n) + " rows cannot determine " +
                         std::to_string(dim) + " parameters");
  }

  // Normal equations A beta = b with A = X'X, b = X'y over the augmented design.
  std::vector<double> a(dim * dim, 0.0);
  std::vector<double> b(dim, 0.0);
  std::vector<double> row(dim);
  for (std::size_t i = 0; i < n; ++i) {
    row[0] = 1.0;
    for (std::size_t j = 0; j < k; ++j) row[j + 1] = features[i][j];
    for (std::size_t p = 0; p < dim; ++p) {
      b[p] += row[p] * target[i];
      for (std::size_t q = p; q < dim; ++q) a[p * dim + q] += row[p] * row[q];
    }
  }
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < p; ++q) a[p * dim + q] = a[q * dim + p];

  double scale = 0.0;
  for (std::size_t p = 0; p < dim; ++p) scale = std::max(scale, std::fabs(a[p * dim + p]));
  const double tol = scale * 1e-12;

  // Gaussian elimination with partial pivoting; column swaps are not used so
  // a failing pivot identifies the dependent column directly.
  std::vector<std::size_t> perm(dim);
  for (std::size_t p = 0; p < dim; ++p) perm[p] = p;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (std::fabs(a[r * dim + col]) > std::fabs(a[pivot * dim + col])) pivot = r;
    }
    if (std::fabs(a[pivot * dim + col]) <= tol) {
      throw SingularDesign("singular design matrix at " + column_label(col, column_names));
    }
    if (pivot != col) {
      for (std::size_t q = 0; q < dim; ++q) std::swap(a[pivot * dim + q], a[col * dim + q]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double f = a[r * dim + col] / a[col * dim + col];
      if (f == 0.0) continue;
      for (std::size_t q = col; q < dim; ++q) a[r * dim + q] -= f * a[col * dim + q];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> beta(dim, 0.0);
  for (std::size_t col = dim; col-- > 0;) {
    double s = b[col];
    for (std::size_t q = col + 1; q < dim; ++q) s -= a[col * dim + q] * beta[q];
    beta[col] = s / a[col * dim + col];
  }

  OlsResult result;
  result.intercept = beta[0];
  result.coefficients.assign(beta.begin() + 1, beta.end());

  double mean = 0.0;
  double sum_sq = 0.0;
  for (double y : target) {
    mean += y;
    sum_sq += y * y;
  }
  mean /= static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = result.intercept;
    for (std::size_t j = 0; j < k; ++j) fitted += result.coefficients[j] * features[i][j];
    const double r = target[i] - fitted;
    ss_res += r * r;
    const double c = target[i] - mean;
    ss_tot += c * c;
  }
  result.residual_norm = std::sqrt(ss_res);
  // a constant target has no variance to explain; rounding noise in ss_tot
  // must not turn the ratio into garbage
  const bool degenerate = ss_tot <= 1e-20 * std::max(1.0, sum_sq);
  result.r_squared = degenerate ? 0.0 : 1.0 - ss_res / ss_tot;
  return result;
}

std::vector<double> ols_residuals(const OlsResult& fit,
                                  const std::vector<std::vector<double>>& features,
                                  const std::vector<double>& target) {
  std::vector<double> res(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    double fitted = fit.intercept;
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
      fitted += fit.coefficients[j] * features[i][j];
    }
    res[i] = target[i] - fitted;
  }
  return res;
}

}  // namespace fundgraph
