#pragma once

#include <Eigen/Dense>
#include <complex>

#include "holo/errors.hpp"

namespace holo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance bundle shared by all modules.
struct Tolerance {
  double structural = 1e-10;   // Hermiticity / unitarity / idempotency
  double transport = 1e-8;     // transport-condition residuals
  double integration = 1e-4;   // end-to-end propagation accuracy
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Largest entry magnitude.
double max_abs(const Matrix& m);

double hermiticity_defect(const Matrix& m);        // max |M - M^dag|
double unitarity_defect(const Matrix& m);          // max |M^dag M - 1|
double idempotency_defect(const Matrix& m);        // max |M^2 - M|

void require_finite(const Matrix& m, const char* context);
void require_hermitian(const Matrix& m, double tol, const char* context);
void require_unitary(const Matrix& m, double tol, const char* context);

/// Principal argument mapped to [0, 2pi); values within tol of 2pi snap to 0.
double principal_phase(Complex z, double tol = 1e-10);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

struct UnitaryEigen {
  RealVector phases;  // in [0, 2pi), ascending
  Matrix vectors;     // orthonormal columns
};

/// e^{-itH} for Hermitian H, computed through the eigendecomposition so the
/// result is unitary by construction.
Matrix expm_skew(const Matrix& H, double t, double structural_tol = 1e-10);

HermitianEigen eig_hermitian(const Matrix& H, double structural_tol = 1e-10);

/// Spectral decomposition of a unitary matrix with phases in [0, 2pi).
UnitaryEigen eig_unitary(const Matrix& U, double structural_tol = 1e-10);

}  // namespace holo
