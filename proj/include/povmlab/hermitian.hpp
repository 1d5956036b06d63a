#pragma once

#include <Eigen/Dense>
#include <complex>

#include "povmlab/errors.hpp"

namespace povmlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Dense Hermitian operator on a finite-dimensional Hilbert space.
///
/// Hermiticity is enforced at construction by replacing the input with
/// (A + A*)/2; the pre-symmetrization defect (max deviation relative to the
/// largest entry magnitude) is recorded so callers can assert it stayed at
/// rounding level. All values are immutable after construction.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(ComplexMatrix entries);

    static HermitianMatrix identity(Eigen::Index dim);
    static HermitianMatrix zero(Eigen::Index dim);
    static HermitianMatrix diagonal(const RealVector &values);

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix &mat() const { return mat_; }

    /// Max |A - A*| entry before symmetrization, relative to max |A| entry.
    double hermiticity_defect() const { return defect_; }

    HermitianMatrix operator+(const HermitianMatrix &other) const;
    HermitianMatrix operator-(const HermitianMatrix &other) const;
    HermitianMatrix operator*(double scale) const;

  private:
    ComplexMatrix mat_;
    double defect_ = 0.0;
};

inline HermitianMatrix operator*(double scale, const HermitianMatrix &a) { return a * scale; }

struct SpectralDecomposition {
    RealVector eigenvalues;    // ascending
    ComplexMatrix eigenvectors; // orthonormal columns, A = V diag(w) V*
};

/// Operator norm: max |eigenvalue|.
double op_norm(const HermitianMatrix &a);

/// Full eigendecomposition, eigenvalues ascending.
SpectralDecomposition spectral_decomp(const HermitianMatrix &a);

/// Square root of a PSD matrix. Eigenvalues in [-tol, 0) are clamped to 0;
/// anything below -tol raises NotPositiveSemidefinite.
HermitianMatrix psd_sqrt(const HermitianMatrix &a, double tol);

/// psd_sqrt with the default tolerance 1e-10 * dim * op_norm(a).
HermitianMatrix psd_sqrt(const HermitianMatrix &a);

/// ||AB - BA||_op. The commutator is skew-Hermitian, so this is computed as
/// op_norm of i(AB - BA).
double comm_norm(const HermitianMatrix &a, const HermitianMatrix &b);

} // namespace povmlab
