#include "tapg/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tapg {

namespace {

/// Cyclic Jacobi eigendecomposition of a symmetric matrix (double).
/// Returns eigenvalues in `eigvals` and eigenvectors as columns of `v`.
void jacobi_eigen(std::vector<double>& a, std::size_t n,
                  std::vector<double>& eigvals, std::vector<double>& v) {
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-24) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i * n + p];
          const double aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p * n + i];
          const double aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v[i * n + p];
          const double viq = v[i * n + q];
          v[i * n + p] = c * vip - s * viq;
          v[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }

  eigvals.resize(n);
  for (std::size_t i = 0; i < n; ++i) eigvals[i] = a[i * n + i];
}

}  // namespace

PcaModel pca_fit(const Matrix& rows, std::size_t k) {
  const std::size_t n = rows.rows, dim = rows.cols;
  if (n < 2) fail(ErrorCode::kConfig, "pca_fit: need at least 2 rows");
  if (k == 0 || k > std::min(n - 1, dim))
    fail(ErrorCode::kConfig,
         "pca_fit: k=" + std::to_string(k) + " exceeds min(N-1, dim)=" +
             std::to_string(std::min(n - 1, dim)));

  std::vector<double> mean(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) mean[j] += rows(i, j);
  for (double& m : mean) m /= static_cast<double>(n);

  // sample covariance, divisor N-1
  std::vector<double> cov(dim * dim, 0.0);
  std::vector<double> centered(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) centered[j] = rows(i, j) - mean[j];
    for (std::size_t p = 0; p < dim; ++p)
      for (std::size_t q = p; q < dim; ++q)
        cov[p * dim + q] += centered[p] * centered[q];
  }
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = p; q < dim; ++q) {
      cov[p * dim + q] /= static_cast<double>(n - 1);
      cov[q * dim + p] = cov[p * dim + q];
    }

  std::vector<double> eigvals, eigvecs;
  jacobi_eigen(cov, dim, eigvals, eigvecs);

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigvals[a] > eigvals[b]; });

  PcaModel model;
  model.mean.assign(mean.begin(), mean.end());
  model.components = Matrix(k, dim);
  model.explained_variance.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t col = order[c];
    model.explained_variance[c] = static_cast<float>(eigvals[col]);
    // deterministic sign: largest-|coordinate| entry made positive
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double a = std::abs(eigvecs[j * dim + col]);
      if (a > best) {
        best = a;
        arg = j;
      }
    }
    const double sign = eigvecs[arg * dim + col] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < dim; ++j)
      model.components(c, j) = static_cast<float>(sign * eigvecs[j * dim + col]);
  }
  return model;
}

Matrix pca_project(const PcaModel& m, const Matrix& rows) {
  if (rows.cols != m.mean.size())
    fail(ErrorCode::kShapeMismatch,
         "pca_transform: data dim " + std::to_string(rows.cols) +
             " != model dim " + std::to_string(m.mean.size()));
  const std::size_t k = m.components.rows, dim = rows.cols;
  Matrix out(rows.rows, k);
  std::vector<double> centered(dim);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    for (std::size_t j = 0; j < dim; ++j)
      centered[j] = static_cast<double>(rows(i, j)) - m.mean[j];
    for (std::size_t c = 0; c < k; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j)
        acc += static_cast<double>(m.components(c, j)) * centered[j];
      out(i, c) = static_cast<float>(acc);
    }
  }
  return out;
}

FeatureSequence pca_transform(const PcaModel& m, const FeatureSequence& f) {
  FeatureSequence out = f;
  out.data = pca_project(m, f.data);
  return out;
}

}  // namespace tapg
