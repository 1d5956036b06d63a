#include "povmlab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "parallel.hpp"

namespace povmlab {

namespace {

constexpr double kCubeSlack = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kSumTol = 1e-9;

OutcomeVector vertex_from_mask(Eigen::Index n, std::uint64_t mask) {
    // first coordinate pinned to +1; the remaining n-1 signs come from mask
    RealVector x(n);
    x(0) = 1.0;
    for (Eigen::Index j = 1; j < n; ++j) {
        x(j) = ((mask >> (j - 1)) & 1ULL) ? 1.0 : -1.0;
    }
    return OutcomeVector(std::move(x));
}

ComplexMatrix contract_raw(const FinitePovm &a, const RealVector &x) {
    ComplexMatrix acc = ComplexMatrix::Zero(a.dim(), a.dim());
    for (Eigen::Index j = 0; j < a.outcomes(); ++j) {
        acc += x(j) * a.element(j).mat();
    }
    return acc;
}

double top_eigenvalue(const ComplexMatrix &h, Eigen::VectorXcd *vec = nullptr) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        h, vec ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigensolverFailure("eigensolve failed in cube search", static_cast<int>(h.rows()));
    }
    if (vec) *vec = solver.eigenvectors().col(h.rows() - 1);
    return solver.eigenvalues()(h.rows() - 1);
}

} // namespace

OutcomeVector::OutcomeVector(RealVector x) : x_(std::move(x)) {
    if (x_.size() == 0) throw InvalidValue("OutcomeVector must be nonempty");
    if (!x_.allFinite()) throw InvalidValue("OutcomeVector entries must be finite");
    const double worst = x_.cwiseAbs().maxCoeff();
    if (worst > 1.0 + kCubeSlack) {
        throw InvalidValue("OutcomeVector entry " + std::to_string(worst) + " outside [-1,1]");
    }
    x_ = x_.cwiseMin(1.0).cwiseMax(-1.0);
}

OutcomeVector OutcomeVector::ones(Eigen::Index n) { return OutcomeVector(RealVector::Ones(n)); }
OutcomeVector OutcomeVector::zeros(Eigen::Index n) { return OutcomeVector(RealVector::Zero(n)); }

OutcomeVector OutcomeVector::basis(Eigen::Index n, Eigen::Index j) {
    RealVector x = RealVector::Zero(n);
    x(j) = 1.0;
    return OutcomeVector(std::move(x));
}

OutcomeVector OutcomeVector::signs(Eigen::Index n, std::uint64_t mask) {
    RealVector x(n);
    for (Eigen::Index j = 0; j < n; ++j) x(j) = ((mask >> j) & 1ULL) ? 1.0 : -1.0;
    return OutcomeVector(std::move(x));
}

FinitePovm::FinitePovm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidValue("POVM needs at least one element");
    const Eigen::Index d = elements_.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &e : elements_) {
        if (e.dim() != d) throw DimensionMismatch("POVM elements have mixed dimensions");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(e.mat(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw EigensolverFailure("POVM element eigensolve failed", static_cast<int>(d));
        }
        const double min_eig = solver.eigenvalues()(0);
        if (min_eig < -kPsdTol) {
            throw NotPositiveSemidefinite("POVM element is not PSD", min_eig);
        }
        sum += e.mat();
    }
    const double defect = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > kSumTol) {
        throw InvalidValue("POVM elements sum to identity only within " + std::to_string(defect));
    }
}

FinitePovm FinitePovm::trivial(Eigen::Index dim, Eigen::Index n) {
    std::vector<HermitianMatrix> elements(
        static_cast<std::size_t>(n),
        HermitianMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(n)));
    return FinitePovm(std::move(elements));
}

HermitianMatrix contract(const FinitePovm &a, const OutcomeVector &x) {
    if (x.size() != a.outcomes()) throw DimensionMismatch("contract: outcome vector length mismatch");
    return HermitianMatrix(contract_raw(a, x.vec()));
}

HermitianMatrix noise_operator(const FinitePovm &a, const OutcomeVector &x) {
    if (x.size() != a.outcomes()) throw DimensionMismatch("noise_operator: length mismatch");
    ComplexMatrix sq = ComplexMatrix::Zero(a.dim(), a.dim());
    for (Eigen::Index j = 0; j < a.outcomes(); ++j) {
        sq += x[j] * x[j] * a.element(j).mat();
    }
    ComplexMatrix ax = contract_raw(a, x.vec());
    return HermitianMatrix(sq - ax * ax);
}

NoiseMagnitudeResult noise_magnitude(const FinitePovm &a, const SearchBudget &budget) {
    const Eigen::Index n = a.outcomes();
    if (n <= budget.exhaustive_cutoff) {
        // Delta(-x) = Delta(x), so the first sign is pinned. At a vertex
        // sum x_j^2 A_j is the constant sum of all elements.
        ComplexMatrix sum = ComplexMatrix::Zero(a.dim(), a.dim());
        for (const auto &e : a.elements()) sum += e.mat();
        const std::uint64_t count = 1ULL << (n - 1);
        std::vector<double> values(count);
        detail::parallel_for(static_cast<int>(count), [&](int i) {
            const auto mask = static_cast<std::uint64_t>(i);
            ComplexMatrix ax = contract_raw(a, vertex_from_mask(n, mask).vec());
            values[static_cast<std::size_t>(i)] = top_eigenvalue(sum - ax * ax);
        });
        std::uint64_t best_mask = 0;
        for (std::uint64_t mask = 1; mask < count; ++mask) {
            if (values[mask] > values[best_mask]) best_mask = mask;
        }
        double value = std::max(values[best_mask], 0.0);
        if (value > 1.0 && value < 1.0 + kSumTol) value = 1.0; // eq. bound 0 <= N(A) <= 1
        return {value, vertex_from_mask(n, best_mask)};
    }

    // Multistart projected-gradient ascent on <v, Delta(x) v> with v tracking
    // the top eigenvector of Delta(x).
    std::vector<std::pair<double, RealVector>> results(static_cast<std::size_t>(budget.starts));
    detail::parallel_for(budget.starts, [&](int s) {
        std::mt19937_64 rng(detail::mix_seed(budget.seed, static_cast<std::uint64_t>(s)));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        RealVector x(n);
        for (Eigen::Index j = 0; j < n; ++j) x(j) = unit(rng);
        Eigen::VectorXcd v;
        for (int it = 0; it < budget.iterations; ++it) {
            ComplexMatrix ax = contract_raw(a, x);
            ComplexMatrix sq = ComplexMatrix::Zero(a.dim(), a.dim());
            for (Eigen::Index j = 0; j < n; ++j) sq += x(j) * x(j) * a.element(j).mat();
            top_eigenvalue(sq - ax * ax, &v);
            Eigen::VectorXcd axv = ax * v;
            RealVector grad(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                const Eigen::VectorXcd ajv = a.element(j).mat() * v;
                grad(j) = 2.0 * x(j) * v.dot(ajv).real() - 2.0 * ajv.dot(axv).real();
            }
            x = (x + budget.step * grad).cwiseMin(1.0).cwiseMax(-1.0);
        }
        ComplexMatrix ax = contract_raw(a, x);
        ComplexMatrix sq = ComplexMatrix::Zero(a.dim(), a.dim());
        for (Eigen::Index j = 0; j < n; ++j) sq += x(j) * x(j) * a.element(j).mat();
        results[static_cast<std::size_t>(s)] = {top_eigenvalue(sq - ax * ax), x};
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < results.size(); ++s) {
        if (results[s].first > results[best].first) best = s;
    }
    double value = std::clamp(results[best].first, 0.0, 1.0);
    return {value, OutcomeVector(results[best].second)};
}

NoncommutativityResult noncommutativity(const FinitePovm &a, const SearchBudget &budget) {
    const Eigen::Index n = a.outcomes();
    if (n == 1) {
        return {0.0, OutcomeVector::ones(1), OutcomeVector::ones(1)};
    }
    if (n <= budget.exhaustive_cutoff) {
        // ||[A(x),A(y)]|| is unchanged under x -> -x or y -> -y, so both
        // leading signs are pinned.
        const std::uint64_t count = 1ULL << (n - 1);
        std::vector<ComplexMatrix> contractions(count);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            contractions[mask] = contract_raw(a, vertex_from_mask(n, mask).vec());
        }
        const auto pairs = static_cast<int>(count * count);
        std::vector<double> values(static_cast<std::size_t>(pairs));
        detail::parallel_for(pairs, [&](int p) {
            const std::uint64_t mx = static_cast<std::uint64_t>(p) / count;
            const std::uint64_t my = static_cast<std::uint64_t>(p) % count;
            if (my <= mx) { // norm is symmetric in (x, y)
                values[static_cast<std::size_t>(p)] = -1.0;
                return;
            }
            const ComplexMatrix k =
                contractions[mx] * contractions[my] - contractions[my] * contractions[mx];
            values[static_cast<std::size_t>(p)] =
                top_eigenvalue((Complex(0.0, 1.0) * k).eval());
        });
        int best = 0;
        for (int p = 1; p < pairs; ++p) {
            if (values[static_cast<std::size_t>(p)] > values[static_cast<std::size_t>(best)]) best = p;
        }
        const std::uint64_t mx = static_cast<std::uint64_t>(best) / count;
        const std::uint64_t my = static_cast<std::uint64_t>(best) % count;
        return {std::max(values[static_cast<std::size_t>(best)], 0.0), vertex_from_mask(n, mx),
                vertex_from_mask(n, my)};
    }

    // Multistart sign-flip local search, alternating between x and y.
    struct StartResult {
        double value = -1.0;
        RealVector x, y;
    };
    auto objective = [&](const RealVector &x, const RealVector &y) {
        ComplexMatrix ax = contract_raw(a, x);
        ComplexMatrix ay = contract_raw(a, y);
        return top_eigenvalue((Complex(0.0, 1.0) * (ax * ay - ay * ax)).eval());
    };
    std::vector<StartResult> results(static_cast<std::size_t>(budget.starts));
    detail::parallel_for(budget.starts, [&](int s) {
        std::mt19937_64 rng(detail::mix_seed(budget.seed ^ 0xc0117eful, static_cast<std::uint64_t>(s)));
        RealVector x(n), y(n);
        for (Eigen::Index j = 0; j < n; ++j) x(j) = (rng() & 1ULL) ? 1.0 : -1.0;
        for (Eigen::Index j = 0; j < n; ++j) y(j) = (rng() & 1ULL) ? 1.0 : -1.0;
        double value = objective(x, y);
        for (int round = 0; round < budget.iterations; ++round) {
            bool improved = false;
            for (RealVector *side : {&x, &y}) {
                Eigen::Index flip = -1;
                double best_value = value;
                for (Eigen::Index j = 0; j < n; ++j) {
                    (*side)(j) = -(*side)(j);
                    const double trial = objective(x, y);
                    (*side)(j) = -(*side)(j);
                    if (trial > best_value + 1e-15) { // ties keep the lowest index
                        best_value = trial;
                        flip = j;
                    }
                }
                if (flip >= 0) {
                    (*side)(flip) = -(*side)(flip);
                    value = best_value;
                    improved = true;
                }
            }
            if (!improved) break;
        }
        results[static_cast<std::size_t>(s)] = {value, x, y};
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < results.size(); ++s) {
        if (results[s].value > results[best].value) best = s;
    }
    return {std::max(results[best].value, 0.0), OutcomeVector(results[best].x),
            OutcomeVector(results[best].y)};
}

double janssens_residual(const FinitePovm &a, const OutcomeVector &x, const OutcomeVector &y) {
    if (x.size() != a.outcomes() || y.size() != a.outcomes()) {
        throw DimensionMismatch("janssens_residual: length mismatch");
    }
    const double nx = op_norm(noise_operator(a, x));
    const double ny = op_norm(noise_operator(a, y));
    const double commutator = comm_norm(contract(a, x), contract(a, y));
    return std::sqrt(std::max(nx, 0.0)) * std::sqrt(std::max(ny, 0.0)) - 0.5 * commutator;
}

NaimarkDilation naimark_dilate(const FinitePovm &a) {
    const Eigen::Index d = a.dim();
    const Eigen::Index n = a.outcomes();
    NaimarkDilation out;
    out.isometry = ComplexMatrix::Zero(n * d, d);
    out.projectors.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        out.isometry.block(j * d, 0, d, d) = psd_sqrt(a.element(j)).mat();
        ComplexMatrix p = ComplexMatrix::Zero(n * d, n * d);
        p.block(j * d, j * d, d, d) = ComplexMatrix::Identity(d, d);
        out.projectors.emplace_back(std::move(p));
    }
    return out;
}

HermitianMatrix compress(const ComplexMatrix &isometry, const HermitianMatrix &b) {
    if (isometry.rows() != b.dim()) throw DimensionMismatch("compress: isometry/operator mismatch");
    return HermitianMatrix(isometry.adjoint() * b.mat() * isometry);
}

FinitePovm random_povm(Eigen::Index dim, Eigen::Index n, std::uint64_t seed) {
    if (dim < 1 || n < 2) throw InvalidValue("random_povm needs dim >= 1 and N >= 2");
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<ComplexMatrix> gram;
        gram.reserve(static_cast<std::size_t>(n));
        ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
        for (Eigen::Index j = 0; j < n; ++j) {
            ComplexMatrix m(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r) {
                for (Eigen::Index c = 0; c < dim; ++c) {
                    m(r, c) = Complex(gauss(rng), gauss(rng));
                }
            }
            ComplexMatrix g = m * m.adjoint();
            total += g;
            gram.push_back(std::move(g));
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(total);
        if (solver.info() != Eigen::Success) continue;
        const double min_eig = solver.eigenvalues()(0);
        if (min_eig < 1e-12 * solver.eigenvalues()(dim - 1)) continue; // near-singular, re-draw
        RealVector inv_roots = solver.eigenvalues().cwiseSqrt().cwiseInverse();
        ComplexMatrix whiten =
            solver.eigenvectors() * inv_roots.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
        std::vector<HermitianMatrix> elements;
        elements.reserve(static_cast<std::size_t>(n));
        for (const auto &g : gram) {
            elements.emplace_back(ComplexMatrix(whiten * g * whiten));
        }
        return FinitePovm(std::move(elements));
    }
    throw InvalidValue("random_povm: normalizer stayed singular after bounded retries");
}

} // namespace povmlab
