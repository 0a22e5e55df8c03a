#pragma once

#include "tapg/features.hpp"
#include "tapg/mat.hpp"

namespace tapg {

/// Principal components of a centered sample, rows orthonormal,
/// explained_variance non-increasing.
struct PcaModel {
  Vector mean;                 // [dim]
  Matrix components;           // k x dim
  Vector explained_variance;   // [k], sample covariance eigenvalues
};

/// Fits by eigendecomposing the sample covariance (divisor N-1) with a
/// cyclic Jacobi sweep in double precision. Requires N >= 2 and
/// k <= min(N-1, dim). Component signs are fixed by making the
/// largest-magnitude coordinate of each component positive.
PcaModel pca_fit(const Matrix& rows, std::size_t k);

/// Rows become components * (row - mean); output dim = k.
FeatureSequence pca_transform(const PcaModel& m, const FeatureSequence& f);

/// In-memory variant used by pca_transform and the tests.
Matrix pca_project(const PcaModel& m, const Matrix& rows);

}  // namespace tapg
