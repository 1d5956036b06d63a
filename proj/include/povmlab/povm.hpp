#pragma once

#include <cstdint>
#include <vector>

#include "povmlab/hermitian.hpp"

namespace povmlab {

/// A point of the cube K_N = [-1,1]^N used to contract POVM outcomes.
class OutcomeVector {
  public:
    explicit OutcomeVector(RealVector x);

    Eigen::Index size() const { return x_.size(); }
    double operator[](Eigen::Index j) const { return x_(j); }
    const RealVector &vec() const { return x_; }

    static OutcomeVector ones(Eigen::Index n);
    static OutcomeVector zeros(Eigen::Index n);
    static OutcomeVector basis(Eigen::Index n, Eigen::Index j);
    /// Sign vector from the low bits of `mask` (bit j set -> +1, clear -> -1).
    static OutcomeVector signs(Eigen::Index n, std::uint64_t mask);

  private:
    RealVector x_;
};

/// POVM on the finite outcome set {1,...,N}: PSD elements summing to the
/// identity. Validated at construction; eigenvalues in [-1e-10, 0) are
/// accepted as zero.
class FinitePovm {
  public:
    explicit FinitePovm(std::vector<HermitianMatrix> elements);

    Eigen::Index dim() const { return elements_.front().dim(); }
    Eigen::Index outcomes() const { return static_cast<Eigen::Index>(elements_.size()); }
    const HermitianMatrix &element(Eigen::Index j) const { return elements_[static_cast<std::size_t>(j)]; }
    const std::vector<HermitianMatrix> &elements() const { return elements_; }

    /// The trivial POVM A_j = (1/N) id.
    static FinitePovm trivial(Eigen::Index dim, Eigen::Index n);

  private:
    std::vector<HermitianMatrix> elements_;
};

/// Effort knobs for the cube searches. Below `exhaustive_cutoff` outcomes the
/// searches enumerate sign vertices; above it they fall back to seeded
/// multistart heuristics. Either way the reported values are certified lower
/// bounds with witnesses.
struct SearchBudget {
    int exhaustive_cutoff = 14;
    int starts = 64;
    int iterations = 200;
    double step = 0.1;
    std::uint64_t seed = 0;
};

/// A(x) = sum_j x_j A_j.
HermitianMatrix contract(const FinitePovm &a, const OutcomeVector &x);

/// Noise operator Delta_A(x) = sum_j x_j^2 A_j - A(x)^2. Always PSD.
HermitianMatrix noise_operator(const FinitePovm &a, const OutcomeVector &x);

struct NoiseMagnitudeResult {
    double value = 0.0; // ||Delta_A(witness)||_op, in [0, 1]
    OutcomeVector witness;
};

/// Magnitude of noise: lower bound on max_{x in K_N} ||Delta_A(x)||_op,
/// with the achieving witness.
NoiseMagnitudeResult noise_magnitude(const FinitePovm &a, const SearchBudget &budget);

struct NoncommutativityResult {
    double value = 0.0; // ||[A(x), A(y)]||_op at the witnesses
    OutcomeVector witness_x;
    OutcomeVector witness_y;
};

/// Magnitude of non-commutativity: lower bound on
/// max_{x,y in K_N} ||[A(x), A(y)]||_op. The objective is a norm of a map
/// affine in each argument, so it is attained at cube vertices; witnesses are
/// sign vectors.
NoncommutativityResult noncommutativity(const FinitePovm &a, const SearchBudget &budget);

/// ||Delta(x)||^{1/2} ||Delta(y)||^{1/2} - (1/2)||[A(x),A(y)]||; nonnegative
/// up to rounding for every valid POVM and pair of cube vectors.
double janssens_residual(const FinitePovm &a, const OutcomeVector &x, const OutcomeVector &y);

/// Dilation of a POVM to a projector valued measure on H' = C^{N*dim}:
/// isometry V built by stacking psd_sqrt(A_j), block coordinate projectors
/// P_j, with V* P_j V = A_j.
struct NaimarkDilation {
    ComplexMatrix isometry;                  // (N*dim) x dim, V*V = id
    std::vector<HermitianMatrix> projectors; // P_j on H'
};

NaimarkDilation naimark_dilate(const FinitePovm &a);

/// Compression Psi(B) = V* B V of an operator on the dilation space.
HermitianMatrix compress(const ComplexMatrix &isometry, const HermitianMatrix &b);

/// Deterministic random POVM: A_j = S^{-1/2} G_j S^{-1/2} with G_j = M_j M_j*
/// for complex Gaussian M_j and S = sum G_j.
FinitePovm random_povm(Eigen::Index dim, Eigen::Index n, std::uint64_t seed);

} // namespace povmlab
