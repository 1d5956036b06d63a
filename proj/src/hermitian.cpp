#include "povmlab/hermitian.hpp"

#include <cmath>

namespace povmlab {

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> solve(const HermitianMatrix &a, bool vectors) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
    solver.compute(a.mat(), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigensolverFailure("Hermitian eigensolve failed to converge",
                                 static_cast<int>(a.dim()));
    }
    return solver;
}

} // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw DimensionMismatch("HermitianMatrix requires a nonempty square matrix");
    }
    if (!entries.allFinite()) {
        throw InvalidValue("HermitianMatrix entries must be finite");
    }
    const double scale = entries.cwiseAbs().maxCoeff();
    const double raw_defect = (entries - entries.adjoint().eval()).cwiseAbs().maxCoeff();
    defect_ = scale > 0.0 ? raw_defect / scale : 0.0;
    mat_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
    return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector &values) {
    ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
    m.diagonal() = values.cast<Complex>();
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix &other) const {
    if (dim() != other.dim()) throw DimensionMismatch("matrix dimensions differ in +");
    return HermitianMatrix(mat_ + other.mat_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix &other) const {
    if (dim() != other.dim()) throw DimensionMismatch("matrix dimensions differ in -");
    return HermitianMatrix(mat_ - other.mat_);
}

HermitianMatrix HermitianMatrix::operator*(double scale) const {
    return HermitianMatrix(scale * mat_);
}

double op_norm(const HermitianMatrix &a) {
    auto solver = solve(a, /*vectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

SpectralDecomposition spectral_decomp(const HermitianMatrix &a) {
    auto solver = solve(a, /*vectors=*/true);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix psd_sqrt(const HermitianMatrix &a, double tol) {
    auto decomp = spectral_decomp(a);
    const double min_eig = decomp.eigenvalues(0);
    if (min_eig < -tol) {
        throw NotPositiveSemidefinite("psd_sqrt of a matrix that is not PSD", min_eig);
    }
    RealVector roots = decomp.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix b =
        decomp.eigenvectors * roots.cast<Complex>().asDiagonal() * decomp.eigenvectors.adjoint();
    return HermitianMatrix(std::move(b));
}

HermitianMatrix psd_sqrt(const HermitianMatrix &a) {
    return psd_sqrt(a, 1e-10 * static_cast<double>(a.dim()) * op_norm(a));
}

double comm_norm(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("comm_norm: matrix dimensions differ");
    ComplexMatrix k = a.mat() * b.mat() - b.mat() * a.mat();
    return op_norm(HermitianMatrix(Complex(0.0, 1.0) * k));
}

} // namespace povmlab
