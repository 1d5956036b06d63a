#pragma once

#include "povmlab/sphere.hpp"

namespace povmlab {

/// Spin coherent-state quantization data at level m. The Hilbert space has
/// dimension m+1; the coherent amplitude at a grid node (t, phi) is
///   c_k = sqrt(C(m,k)) sin(theta/2)^k cos(theta/2)^(m-k) e^{-i k phi}
/// with t = cos(theta). The t-dependent factors are tabulated per grid row
/// (in log space, so levels past m ~ 60 do not overflow); the phi phase is
/// applied on demand. Rank-one averages of these amplitudes resolve the
/// identity, which is what makes T(1) = id exact up to rounding.
///
/// Immutable after construction and safe to share across workers.
class ToeplitzContext {
  public:
    /// Context with the default paired grid (max(64, m+1), max(128, 2m+2)).
    explicit ToeplitzContext(int m);
    /// Throws ContextUnderresolved unless n_t >= m+1 and n_phi >= 2m+2.
    ToeplitzContext(int m, SphereGrid grid);

    int level() const { return m_; }
    Eigen::Index hilbert_dim() const { return m_ + 1; }
    const SphereGrid &grid() const { return grid_; }

    /// Coherent amplitude vector at grid node (i, l).
    Eigen::VectorXcd coherent_amplitude(int i, int l) const;
    /// Max over t-rows of | ||c||^2 - 1 |.
    double amplitude_norm_defect() const;
    /// t-dependent amplitude factor sqrt(C(m,k)) s^k c^(m-k) at row i.
    double amplitude_factor(int i, int k) const { return rho_(i, k); }

  private:
    int m_;
    SphereGrid grid_;
    Eigen::MatrixXd rho_; // n_t x (m+1)
};

/// Toeplitz operator T(f) = (m+1) sum_nodes weight f(node) c c*.
HermitianMatrix toeplitz(const ToeplitzContext &ctx, const SphereFunction &f);

/// POVM {T(f_j)} of a quantized partition of unity.
FinitePovm quantize_partition(const ToeplitzContext &ctx, const PartitionOfUnity &p);

/// Toeplitz operator of a set indicator. Convergence in the grid is only
/// first order since the integrand is discontinuous.
HermitianMatrix region_operator(const ToeplitzContext &ctx,
                                const std::function<bool(const SpherePoint &)> &indicator);

/// || i m [T(f), T(g)] - T({f,g}) ||_op, the correspondence-principle defect.
double correspondence_defect(const ToeplitzContext &ctx, const SphereFunction &f,
                             const SphereFunction &g);

/// || T(f^2) - T(f)^2 ||_op.
double sharpness_defect(const ToeplitzContext &ctx, const SphereFunction &f);

/// | ||T(f)||_op - max_grid |f| |.
double norm_defect(const ToeplitzContext &ctx, const SphereFunction &f);

} // namespace povmlab
