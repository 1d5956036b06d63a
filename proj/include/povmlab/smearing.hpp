#pragma once

#include <cstdint>

#include "povmlab/povm.hpp"

namespace povmlab {

/// Finite Markov kernel: row-stochastic L x N matrix, gamma(w, j) being the
/// probability that source outcome w diffuses into target outcome j.
class MarkovKernel {
  public:
    explicit MarkovKernel(Eigen::MatrixXd gamma);

    Eigen::Index source_size() const { return gamma_.rows(); } // L
    Eigen::Index target_size() const { return gamma_.cols(); } // N
    double operator()(Eigen::Index w, Eigen::Index j) const { return gamma_(w, j); }
    const Eigen::MatrixXd &gamma() const { return gamma_; }

    static MarkovKernel identity(Eigen::Index n);
    /// Kernel of this smearing followed by `then`: gamma_this * gamma_then.
    MarkovKernel compose(const MarkovKernel &then) const;

  private:
    Eigen::MatrixXd gamma_;
};

/// Smearing A_j = sum_w gamma(w, j) B_w.
FinitePovm smear(const FinitePovm &b, const MarkovKernel &k);

/// Pushforward (Gamma x)(w) = sum_j x_j gamma(w, j); satisfies
/// contract(smear(B,k), x) = contract(B, Gamma x).
OutcomeVector pushforward(const MarkovKernel &k, const OutcomeVector &x);

struct CommutativeUnsmearing {
    FinitePovm projectors;  // joint spectral projector family, L <= dim outcomes
    MarkovKernel kernel;    // gamma(w, j) = joint eigenvalue of A_j on eigenspace w
};

/// Writes a commutative POVM as a smearing of a sharp observable, via joint
/// diagonalization of the elements. Throws NotCommutative when some pair of
/// elements fails comm_norm <= tol. Outcomes are ordered lexicographically by
/// kernel row.
CommutativeUnsmearing unsmear_commutative(const FinitePovm &a, double tol);

/// unsmear_commutative with the default tolerance 1e-8 * max element norm.
CommutativeUnsmearing unsmear_commutative(const FinitePovm &a);

struct NoiseBracket {
    double lower = 0.0; // (1/2) nu_q(A), valid for every unsmearing of A
    double upper = 0.0; // noise of the best unsmearing found (0 when commutative)
};

/// Two-sided bracket on the systematic noise. The exact value is an infimum
/// over all unsmearings and is not computed; the bracket pairs the
/// (1/2) nu_q lower bound with the best constructive upper bound available
/// (the sharp unsmearing when A is commutative, A itself otherwise).
NoiseBracket systematic_noise_bracket(const FinitePovm &a, const SearchBudget &budget);

} // namespace povmlab
