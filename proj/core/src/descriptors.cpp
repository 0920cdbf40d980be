#include "curvematch/descriptors.hpp"

#include <cmath>

#include "curvematch/errors.hpp"

namespace curvematch {

namespace {

// First/last eigenvalues above the numerical-zero threshold.
std::pair<int, int> nonzero_range(const SpectralBasis& basis) {
  const int lo = basis.first_nonzero();
  require(lo < basis.k(), ErrorCode::NumericalDegeneracy,
          "basis has no nonzero eigenvalues");
  return {lo, basis.k() - 1};
}

void max_normalize(Eigen::MatrixXd& values) {
  const double mx = values.maxCoeff();
  require(mx > 0 && std::isfinite(mx), ErrorCode::NumericalDegeneracy,
          "descriptor field has no positive entries");
  values /= mx;
}

}  // namespace

DescriptorField compute_hks(const SpectralBasis& basis, int d) {
  require(d >= 1, ErrorCode::InvalidArgument, "descriptor width must be >= 1");
  require(basis.k() >= 2, ErrorCode::InvalidArgument, "HKS needs k >= 2 eigenpairs");
  const auto [lo, hi] = nonzero_range(basis);

  const double t_min = 4.0 * std::log(10.0) / basis.eigenvalues[hi];
  const double t_max = 4.0 * std::log(10.0) / basis.eigenvalues[lo];
  const int n = basis.n();

  const Eigen::MatrixXd psi2 = basis.eigenfunctions.array().square();

  DescriptorField field;
  field.kind = DescriptorKind::Hks;
  field.values.resize(n, d);
  for (int c = 0; c < d; ++c) {
    const double s = d == 1 ? 0.0 : static_cast<double>(c) / (d - 1);
    const double t = std::exp(std::log(t_min) + s * (std::log(t_max) - std::log(t_min)));
    const Eigen::VectorXd decay = (-t * basis.eigenvalues.array()).exp();
    field.values.col(c) = psi2 * decay;
    // heat trace equals the surface integral of the time slice
    field.values.col(c) /= decay.sum();
  }
  max_normalize(field.values);
  return field;
}

DescriptorField compute_wks(const SpectralBasis& basis, int d) {
  require(d >= 1, ErrorCode::InvalidArgument, "descriptor width must be >= 1");
  require(basis.k() >= 3, ErrorCode::InvalidArgument, "WKS needs k >= 3 eigenpairs");
  const auto [lo, hi] = nonzero_range(basis);
  require(hi > lo, ErrorCode::NumericalDegeneracy, "WKS needs at least 2 nonzero eigenvalues");

  const int n = basis.n();
  const int nz = hi - lo + 1;
  Eigen::VectorXd log_ev(nz);
  for (int j = 0; j < nz; ++j) log_ev[j] = std::log(basis.eigenvalues[lo + j]);

  const double e_min = log_ev[0];
  const double e_max = log_ev[nz - 1];
  // floor sigma at the spectrum's own scale so a (near-)degenerate band
  // degrades to uniform weights instead of amplifying eigenvalue noise
  const double sigma =
      std::max(7.0 * (e_max - e_min) / d, 1e-6 * std::max(1.0, std::abs(e_max)));
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);

  const Eigen::MatrixXd psi2 = basis.eigenfunctions.middleCols(lo, nz).array().square();

  DescriptorField field;
  field.kind = DescriptorKind::Wks;
  field.values.resize(n, d);
  for (int c = 0; c < d; ++c) {
    const double s = d == 1 ? 0.0 : static_cast<double>(c) / (d - 1);
    const double e = e_min + s * (e_max - e_min);
    const Eigen::VectorXd w = (-(e - log_ev.array()).square() * inv2s2).exp();
    field.values.col(c) = (psi2 * w) / w.sum();
  }
  max_normalize(field.values);
  return field;
}

DescriptorField restrict_to_boundary(const DescriptorField& field, const PlanarSolidMesh& solid) {
  require(field.rows() == solid.vertex_count(), ErrorCode::DimensionMismatch,
          "field rows do not match solid vertex count");
  DescriptorField out;
  out.kind = field.kind;
  const int m = static_cast<int>(solid.boundary_map.size());
  out.values.resize(m, field.width());
  for (int i = 0; i < m; ++i) out.values.row(i) = field.values.row(solid.boundary_map[i]);
  return out;
}

}  // namespace curvematch
