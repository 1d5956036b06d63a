#include "povmlab/toeplitz.hpp"

#include <cmath>
#include <numbers>

namespace povmlab {

namespace {

SphereGrid default_grid(int m) {
    return SphereGrid(std::max(64, m + 1), std::max(128, 2 * m + 2));
}

Eigen::MatrixXd amplitude_table(int m, const SphereGrid &grid) {
    Eigen::MatrixXd rho(grid.n_t(), m + 1);
    const double log_m_fact = std::lgamma(m + 1.0);
    for (int i = 0; i < grid.n_t(); ++i) {
        const double t = grid.t(i);
        const double log_s = 0.5 * std::log((1.0 - t) / 2.0); // log sin(theta/2)
        const double log_c = 0.5 * std::log((1.0 + t) / 2.0); // log cos(theta/2)
        for (int k = 0; k <= m; ++k) {
            const double log_binom = 0.5 * (log_m_fact - std::lgamma(k + 1.0) -
                                            std::lgamma(m - k + 1.0));
            rho(i, k) = std::exp(log_binom + k * log_s + (m - k) * log_c);
        }
    }
    return rho;
}

/// Assembles T(f) from per-node samples. The phi sum is carried out first:
/// the amplitude phases depend on phi only through e^{-i(k-l)phi}, so each
/// matrix element needs just the phi Fourier modes of f per t-row.
HermitianMatrix assemble(const ToeplitzContext &ctx,
                         const std::function<double(const SpherePoint &)> &sample) {
    const int m = ctx.level();
    const SphereGrid &grid = ctx.grid();
    const int n_t = grid.n_t();
    const int n_phi = grid.n_phi();

    // Unit roots e^{-i d phi_l} = omega^{(d*l) mod n_phi}.
    Eigen::VectorXcd omega(n_phi);
    for (int l = 0; l < n_phi; ++l) {
        const double angle = -2.0 * std::numbers::pi * l / n_phi;
        omega(l) = Complex(std::cos(angle), std::sin(angle));
    }

    Eigen::MatrixXcd modes(n_t, m + 1); // modes(i, d) = (1/n_phi) sum_l f e^{-i d phi_l}
    Eigen::VectorXd row(n_phi);
    for (int i = 0; i < n_t; ++i) {
        for (int l = 0; l < n_phi; ++l) row(l) = sample(grid.point(i, l));
        for (int d = 0; d <= m; ++d) {
            Complex acc(0.0, 0.0);
            for (int l = 0; l < n_phi; ++l) {
                acc += row(l) * omega((static_cast<long>(d) * l) % n_phi);
            }
            modes(i, d) = acc / static_cast<double>(n_phi);
        }
    }

    ComplexMatrix t_mat = ComplexMatrix::Zero(m + 1, m + 1);
    for (int k = 0; k <= m; ++k) {
        for (int l = 0; l <= k; ++l) {
            Complex acc(0.0, 0.0);
            for (int i = 0; i < n_t; ++i) {
                acc += grid.row_weight(i) * ctx.amplitude_factor(i, k) *
                       ctx.amplitude_factor(i, l) * modes(i, k - l);
            }
            t_mat(k, l) = static_cast<double>(m + 1) * acc;
            t_mat(l, k) = std::conj(t_mat(k, l));
        }
    }
    return HermitianMatrix(std::move(t_mat));
}

} // namespace

ToeplitzContext::ToeplitzContext(int m) : ToeplitzContext(m, default_grid(m)) {}

ToeplitzContext::ToeplitzContext(int m, SphereGrid grid) : m_(m), grid_(std::move(grid)) {
    if (m < 1) throw InvalidValue("ToeplitzContext needs level m >= 1");
    if (grid_.n_t() < m + 1 || grid_.n_phi() < 2 * m + 2) {
        throw ContextUnderresolved("grid " + std::to_string(grid_.n_t()) + "x" +
                                   std::to_string(grid_.n_phi()) + " too coarse for level " +
                                   std::to_string(m) + " (need n_t >= m+1, n_phi >= 2m+2)");
    }
    rho_ = amplitude_table(m, grid_);
}

Eigen::VectorXcd ToeplitzContext::coherent_amplitude(int i, int l) const {
    Eigen::VectorXcd c(m_ + 1);
    const double phi = grid_.phi(l);
    for (int k = 0; k <= m_; ++k) {
        c(k) = rho_(i, k) * Complex(std::cos(k * phi), -std::sin(k * phi));
    }
    return c;
}

double ToeplitzContext::amplitude_norm_defect() const {
    double worst = 0.0;
    for (int i = 0; i < grid_.n_t(); ++i) {
        worst = std::max(worst, std::abs(rho_.row(i).squaredNorm() - 1.0));
    }
    return worst;
}

HermitianMatrix toeplitz(const ToeplitzContext &ctx, const SphereFunction &f) {
    return assemble(ctx, [&f](const SpherePoint &p) { return f(p); });
}

FinitePovm quantize_partition(const ToeplitzContext &ctx, const PartitionOfUnity &p) {
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(p.size()));
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        elements.push_back(toeplitz(ctx, p.function(j)));
    }
    return FinitePovm(std::move(elements));
}

HermitianMatrix region_operator(const ToeplitzContext &ctx,
                                const std::function<bool(const SpherePoint &)> &indicator) {
    return assemble(ctx, [&indicator](const SpherePoint &p) { return indicator(p) ? 1.0 : 0.0; });
}

double correspondence_defect(const ToeplitzContext &ctx, const SphereFunction &f,
                             const SphereFunction &g) {
    const ComplexMatrix tf = toeplitz(ctx, f).mat();
    const ComplexMatrix tg = toeplitz(ctx, g).mat();
    const ComplexMatrix bracket = toeplitz(ctx, poisson_bracket(f, g)).mat();
    const ComplexMatrix defect =
        Complex(0.0, static_cast<double>(ctx.level())) * (tf * tg - tg * tf) - bracket;
    return op_norm(HermitianMatrix(defect));
}

double sharpness_defect(const ToeplitzContext &ctx, const SphereFunction &f) {
    const ComplexMatrix tf = toeplitz(ctx, f).mat();
    const ComplexMatrix tf2 = toeplitz(ctx, f * f).mat();
    return op_norm(HermitianMatrix(tf2 - tf * tf));
}

double norm_defect(const ToeplitzContext &ctx, const SphereFunction &f) {
    // The comparison is against the uniform norm over the whole sphere; the
    // Gauss grid has no nodes at the poles, so they are sampled explicitly.
    double sup = sup_norm(f, ctx.grid());
    sup = std::max(sup, std::abs(f({1.0, 0.0})));
    sup = std::max(sup, std::abs(f({-1.0, 0.0})));
    return std::abs(op_norm(toeplitz(ctx, f)) - sup);
}

} // namespace povmlab
