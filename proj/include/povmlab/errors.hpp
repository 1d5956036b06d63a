#pragma once

#include <stdexcept>
#include <string>

namespace povmlab {

/// Base class for all povmlab errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// Dense Hermitian eigensolve did not converge. Carries the matrix dimension.
class EigensolverFailure : public Error {
  public:
    EigensolverFailure(const std::string &what, int dim)
        : Error(what + " (dim=" + std::to_string(dim) + ")"), dim_(dim) {}
    int dim() const { return dim_; }

  private:
    int dim_;
};

class NotPositiveSemidefinite : public Error {
  public:
    NotPositiveSemidefinite(const std::string &what, double offending_eigenvalue)
        : Error(what + " (min eigenvalue " + std::to_string(offending_eigenvalue) + ")"),
          offending_eigenvalue_(offending_eigenvalue) {}
    double offending_eigenvalue() const { return offending_eigenvalue_; }

  private:
    double offending_eigenvalue_;
};

class NotCommutative : public Error {
  public:
    NotCommutative(const std::string &what, double max_commutator_norm)
        : Error(what + " (max commutator norm " + std::to_string(max_commutator_norm) + ")"),
          max_commutator_norm_(max_commutator_norm) {}
    double max_commutator_norm() const { return max_commutator_norm_; }

  private:
    double max_commutator_norm_;
};

/// Cap bumps fail to cover the sphere; reports the worst grid point.
class CoverageGap : public Error {
  public:
    CoverageGap(const std::string &what, double t, double phi)
        : Error(what + " (worst point t=" + std::to_string(t) + ", phi=" + std::to_string(phi) + ")"),
          t_(t), phi_(phi) {}
    double t() const { return t_; }
    double phi() const { return phi_; }

  private:
    double t_, phi_;
};

/// Quadrature grid too coarse for the requested quantization level.
class ContextUnderresolved : public Error {
  public:
    using Error::Error;
};

class InvalidValue : public Error {
  public:
    using Error::Error;
};

} // namespace povmlab
