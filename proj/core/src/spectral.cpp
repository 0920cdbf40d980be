#include "curvematch/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <cmath>

#include "curvematch/errors.hpp"

namespace curvematch {

int SpectralBasis::first_nonzero() const {
  if (k() == 0) return 0;
  const double tol = std::max(1e-8 * std::max(eigenvalues[k() - 1], 0.0), 1e-300);
  for (int j = 0; j < k(); ++j)
    if (eigenvalues[j] > tol) return j;
  return k();
}

namespace {

void sign_fix(Eigen::MatrixXd& psi) {
  for (int j = 0; j < psi.cols(); ++j) {
    const double tol = 1e-12 * psi.col(j).cwiseAbs().maxCoeff();
    for (int i = 0; i < psi.rows(); ++i) {
      if (std::abs(psi(i, j)) > tol) {
        if (psi(i, j) < 0) psi.col(j) = -psi.col(j);
        break;
      }
    }
  }
}

void finalize(SpectralBasis& basis, double scale) {
  const double neg_tol = 1e-9 * std::max(basis.eigenvalues.maxCoeff(), scale);
  for (int j = 0; j < basis.k(); ++j) {
    if (basis.eigenvalues[j] < 0) {
      require(basis.eigenvalues[j] > -neg_tol, ErrorCode::NumericalDegeneracy,
              "significantly negative eigenvalue " + std::to_string(basis.eigenvalues[j]));
      basis.eigenvalues[j] = 0.0;
    }
  }
  sign_fix(basis.eigenfunctions);
}

SpectralBasis dense_eigendecompose(const LaplacianPair& lap, int k) {
  const Eigen::MatrixXd S(lap.stiffness);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(lap.size(), lap.size());
  M.diagonal() = lap.mass;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, M);
  require(es.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "dense generalized eigensolver failed");
  SpectralBasis basis;
  basis.eigenvalues = es.eigenvalues().head(k);
  basis.eigenfunctions = es.eigenvectors().leftCols(k);
  basis.mass = lap.mass;
  return basis;
}

// Shift-invert B-Lanczos with full reorthogonalization on the pencil
// (S, diag(mass)): operator v -> (S + delta*M)^{-1} M v amplifies the smallest
// eigenvalues; Ritz value theta maps back through lambda = 1/theta - delta.
SpectralBasis lanczos_eigendecompose(const LaplacianPair& lap, int k, double scale) {
  const int n = lap.size();
  const Eigen::VectorXd& mass = lap.mass;

  double delta = 1e-6 * scale;
  Eigen::SparseMatrix<double> A = lap.stiffness;
  for (int i = 0; i < n; ++i) A.coeffRef(i, i) += delta * mass[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success) {
    delta *= 1e3;
    A = lap.stiffness;
    for (int i = 0; i < n; ++i) A.coeffRef(i, i) += delta * mass[i];
    ldlt.compute(A);
    require(ldlt.info() == Eigen::Success, ErrorCode::NumericalDegeneracy,
            "sparse factorization of shifted stiffness failed");
  }

  const int maxdim = std::min(n - 1, std::max(3 * k + 40, 100));
  Eigen::MatrixXd Q(n, maxdim + 1);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(maxdim);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(maxdim);

  auto m_dot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a.array() * mass.array() * b.array()).sum();
  };

  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = std::sin(static_cast<double>(i + 1));
  Q.col(0) = v / std::sqrt(m_dot(v, v));

  const double breakdown_tol = 1e-13;
  int dim = 0;
  bool ritz_converged = false;

  auto check_ritz = [&](int d) {
    if (d < k + 1) return false;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < d) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) return false;
    const double theta_max = es.eigenvalues()[d - 1];
    for (int j = 0; j < k; ++j) {
      const int idx = d - 1 - j;
      const double res = std::abs(beta[d - 1] * es.eigenvectors()(d - 1, idx));
      if (res > 1e-11 * std::max(std::abs(es.eigenvalues()[idx]), 1e-3 * theta_max))
        return false;
    }
    return true;
  };

  for (int j = 0; j < maxdim; ++j) {
    Eigen::VectorXd w = ldlt.solve(mass.cwiseProduct(Q.col(j)));
    if (j > 0) w -= beta[j - 1] * Q.col(j - 1);
    alpha[j] = m_dot(Q.col(j), w);
    w -= alpha[j] * Q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd h = Q.leftCols(j + 1).transpose() * mass.cwiseProduct(w);
      w -= Q.leftCols(j + 1) * h;
    }
    double b = std::sqrt(std::max(m_dot(w, w), 0.0));
    dim = j + 1;

    if (b < breakdown_tol) {
      // invariant subspace hit; extend with a fresh deterministic direction
      if (dim >= k && check_ritz(dim)) {
        ritz_converged = true;
        break;
      }
      Eigen::VectorXd r(n);
      for (int i = 0; i < n; ++i) r[i] = std::cos(0.31 * (i + 1) * (j + 2));
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd h = Q.leftCols(j + 1).transpose() * mass.cwiseProduct(r);
        r -= Q.leftCols(j + 1) * h;
      }
      const double rn = std::sqrt(std::max(m_dot(r, r), 0.0));
      if (rn < breakdown_tol) break;  // exhausted the space
      beta[j] = 0.0;
      Q.col(j + 1) = r / rn;
      continue;
    }

    beta[j] = b;
    Q.col(j + 1) = w / b;

    if (dim >= k + 2 && (dim % 10 == 0 || dim == maxdim) && check_ritz(dim)) {
      ritz_converged = true;
      break;
    }
  }

  require(dim >= k, ErrorCode::ConvergenceFailure, "Lanczos space smaller than k");
  if (!ritz_converged)
    require(check_ritz(dim), ErrorCode::ConvergenceFailure,
            "Lanczos did not converge within " + std::to_string(maxdim) + " iterations");

  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  require(es.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "tridiagonal eigensolver failed");

  SpectralBasis basis;
  basis.eigenvalues.resize(k);
  basis.eigenfunctions.resize(n, k);
  basis.mass = mass;
  for (int j = 0; j < k; ++j) {
    const int idx = dim - 1 - j;  // largest theta = smallest lambda
    const double theta = es.eigenvalues()[idx];
    require(theta > 0, ErrorCode::ConvergenceFailure, "non-positive shift-invert Ritz value");
    basis.eigenvalues[j] = 1.0 / theta - delta;
    basis.eigenfunctions.col(j) = Q.leftCols(dim) * es.eigenvectors().col(idx);
  }

  // explicit residual verification against the requested pencil
  const double lam_scale = std::max(basis.eigenvalues.maxCoeff(), delta);
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXd r = lap.stiffness * basis.eigenfunctions.col(j) -
                              basis.eigenvalues[j] * mass.cwiseProduct(basis.eigenfunctions.col(j));
    require(r.cwiseAbs().maxCoeff() <= 1e-6 * lam_scale, ErrorCode::ConvergenceFailure,
            "eigenpair residual exceeds tolerance");
  }
  return basis;
}

}  // namespace

SpectralBasis eigendecompose(const LaplacianPair& lap, int k) {
  const int n = lap.size();
  require(k >= 1 && k < n, ErrorCode::InvalidArgument,
          "need 1 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  const double scale = lap.stiffness.diagonal().sum() / lap.mass.sum();
  require(std::isfinite(scale) && scale > 0, ErrorCode::NumericalDegeneracy,
          "stiffness/mass scale is not positive");

  SpectralBasis basis =
      n <= 300 ? dense_eigendecompose(lap, k) : lanczos_eigendecompose(lap, k, scale);
  finalize(basis, scale);
  return basis;
}

}  // namespace curvematch
