#include "povmlab/smearing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace povmlab {

namespace {

constexpr double kRowTol = 1e-12;

double max_pairwise_comm_norm(const FinitePovm &a) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.outcomes(); ++i) {
        for (Eigen::Index j = i + 1; j < a.outcomes(); ++j) {
            worst = std::max(worst, comm_norm(a.element(i), a.element(j)));
        }
    }
    return worst;
}

double reconstruction_defect(const FinitePovm &a, const FinitePovm &p, const MarkovKernel &k) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.outcomes(); ++j) {
        ComplexMatrix acc = ComplexMatrix::Zero(a.dim(), a.dim());
        for (Eigen::Index w = 0; w < p.outcomes(); ++w) {
            acc += k(w, j) * p.element(w).mat();
        }
        worst = std::max(worst, (acc - a.element(j).mat()).cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace

MarkovKernel::MarkovKernel(Eigen::MatrixXd gamma) : gamma_(std::move(gamma)) {
    if (gamma_.rows() == 0 || gamma_.cols() == 0) {
        throw InvalidValue("MarkovKernel must be nonempty");
    }
    if (!gamma_.allFinite() || gamma_.minCoeff() < 0.0) {
        throw InvalidValue("MarkovKernel entries must be finite and nonnegative");
    }
    for (Eigen::Index w = 0; w < gamma_.rows(); ++w) {
        const double row_sum = gamma_.row(w).sum();
        if (std::abs(row_sum - 1.0) > kRowTol) {
            throw InvalidValue("MarkovKernel row " + std::to_string(w) + " sums to " +
                               std::to_string(row_sum));
        }
    }
}

MarkovKernel MarkovKernel::identity(Eigen::Index n) {
    return MarkovKernel(Eigen::MatrixXd::Identity(n, n));
}

MarkovKernel MarkovKernel::compose(const MarkovKernel &then) const {
    if (target_size() != then.source_size()) {
        throw DimensionMismatch("MarkovKernel compose: size mismatch");
    }
    return MarkovKernel(gamma_ * then.gamma_);
}

FinitePovm smear(const FinitePovm &b, const MarkovKernel &k) {
    if (k.source_size() != b.outcomes()) {
        throw DimensionMismatch("smear: kernel source size != POVM outcomes");
    }
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(k.target_size()));
    for (Eigen::Index j = 0; j < k.target_size(); ++j) {
        ComplexMatrix acc = ComplexMatrix::Zero(b.dim(), b.dim());
        for (Eigen::Index w = 0; w < b.outcomes(); ++w) {
            acc += k(w, j) * b.element(w).mat();
        }
        elements.emplace_back(std::move(acc));
    }
    return FinitePovm(std::move(elements));
}

OutcomeVector pushforward(const MarkovKernel &k, const OutcomeVector &x) {
    if (x.size() != k.target_size()) {
        throw DimensionMismatch("pushforward: outcome vector length != kernel target size");
    }
    return OutcomeVector(k.gamma() * x.vec());
}

CommutativeUnsmearing unsmear_commutative(const FinitePovm &a, double tol) {
    const double worst_comm = max_pairwise_comm_norm(a);
    if (worst_comm > tol) {
        throw NotCommutative("unsmear_commutative requires a commutative POVM", worst_comm);
    }
    const Eigen::Index d = a.dim();
    const Eigen::Index n = a.outcomes();
    const double cluster_radius = 10.0 * std::max(tol, 1e-14);
    const double accept = static_cast<double>(d) * std::max(tol, 1e-12);

    // Generic linear combinations separate the joint eigenspaces. Each draw
    // is validated by reconstructing A from the candidate unsmearing; a
    // degenerate draw fails the check and triggers the next one.
    std::mt19937_64 rng(0x5eedbabe);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        RealVector r(n);
        for (Eigen::Index j = 0; j < n; ++j) r(j) = unit(rng);
        ComplexMatrix probe = ComplexMatrix::Zero(d, d);
        for (Eigen::Index j = 0; j < n; ++j) probe += r(j) * a.element(j).mat();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(probe);
        if (solver.info() != Eigen::Success) {
            throw EigensolverFailure("unsmear_commutative probe eigensolve failed",
                                     static_cast<int>(d));
        }
        const ComplexMatrix &basis = solver.eigenvectors();
        Eigen::MatrixXd expectations(d, n); // row v: (v* A_j v)_j
        for (Eigen::Index v = 0; v < d; ++v) {
            for (Eigen::Index j = 0; j < n; ++j) {
                expectations(v, j) =
                    (basis.col(v).adjoint() * a.element(j).mat() * basis.col(v))(0).real();
            }
        }

        // Greedy grouping of eigenvectors into joint eigenspaces.
        std::vector<std::vector<Eigen::Index>> clusters;
        for (Eigen::Index v = 0; v < d; ++v) {
            bool placed = false;
            for (auto &cluster : clusters) {
                if ((expectations.row(v) - expectations.row(cluster.front()))
                        .cwiseAbs()
                        .maxCoeff() <= cluster_radius) {
                    cluster.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) clusters.push_back({v});
        }

        struct Outcome {
            RealVector row;
            ComplexMatrix projector;
        };
        std::vector<Outcome> outcomes;
        outcomes.reserve(clusters.size());
        for (const auto &cluster : clusters) {
            RealVector row = RealVector::Zero(n);
            ComplexMatrix projector = ComplexMatrix::Zero(d, d);
            for (Eigen::Index v : cluster) {
                row += expectations.row(v).transpose();
                projector += basis.col(v) * basis.col(v).adjoint();
            }
            row /= static_cast<double>(cluster.size());
            // Joint eigenvalues of PSD elements: clamp rounding negatives and
            // renormalize so each row is stochastic to machine precision.
            row = row.cwiseMax(0.0);
            row /= row.sum();
            outcomes.push_back({std::move(row), std::move(projector)});
        }
        std::sort(outcomes.begin(), outcomes.end(), [](const Outcome &lhs, const Outcome &rhs) {
            for (Eigen::Index j = 0; j < lhs.row.size(); ++j) {
                if (lhs.row(j) != rhs.row(j)) return lhs.row(j) < rhs.row(j);
            }
            return false;
        });

        Eigen::MatrixXd gamma(static_cast<Eigen::Index>(outcomes.size()), n);
        std::vector<HermitianMatrix> projectors;
        projectors.reserve(outcomes.size());
        for (std::size_t w = 0; w < outcomes.size(); ++w) {
            gamma.row(static_cast<Eigen::Index>(w)) = outcomes[w].row.transpose();
            projectors.emplace_back(std::move(outcomes[w].projector));
        }
        CommutativeUnsmearing result{FinitePovm(std::move(projectors)),
                                     MarkovKernel(std::move(gamma))};
        if (reconstruction_defect(a, result.projectors, result.kernel) <= accept) {
            return result;
        }
    }
    throw NotCommutative("unsmear_commutative could not separate joint eigenspaces", worst_comm);
}

CommutativeUnsmearing unsmear_commutative(const FinitePovm &a) {
    double scale = 0.0;
    for (const auto &e : a.elements()) scale = std::max(scale, op_norm(e));
    return unsmear_commutative(a, 1e-8 * std::max(scale, 1.0));
}

NoiseBracket systematic_noise_bracket(const FinitePovm &a, const SearchBudget &budget) {
    double scale = 0.0;
    for (const auto &e : a.elements()) scale = std::max(scale, op_norm(e));
    const double tol = 1e-8 * std::max(scale, 1.0);

    NoiseBracket bracket;
    const auto nc = noncommutativity(a, budget);
    bracket.lower = 0.5 * nc.value;
    if (max_pairwise_comm_norm(a) <= tol) {
        // Sharp unsmearing exists; its noise vanishes identically.
        unsmear_commutative(a, tol);
        bracket.upper = 0.0;
        return bracket;
    }
    // A is a smearing of itself through the identity kernel, so its own noise
    // bounds the infimum from above. Folding in the nu_q witnesses keeps
    // lower <= upper in the heuristic search regime (pointwise Janssens).
    double upper = noise_magnitude(a, budget).value;
    upper = std::max(upper, op_norm(noise_operator(a, nc.witness_x)));
    upper = std::max(upper, op_norm(noise_operator(a, nc.witness_y)));
    bracket.upper = upper;
    return bracket;
}

} // namespace povmlab
