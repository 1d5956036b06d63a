#pragma once

#include <functional>
#include <string>
#include <vector>

#include "povmlab/povm.hpp"

namespace povmlab {

/// Point of S^2 in the (t, phi) chart, t = cos(theta) in [-1, 1],
/// phi in [0, 2*pi). The poles t = +-1 are removable singularities of the
/// chart; built-in functions are smooth across them.
struct SpherePoint {
    double t = 0.0;
    double phi = 0.0;
};

/// phi reduced to [0, 2*pi).
double wrap_phi(double phi);

/// Cartesian coordinates (q1, q2, q3) of a sphere point.
Eigen::Vector3d embed(const SpherePoint &p);

/// Geodesic angle between two sphere points.
double geodesic_angle(const SpherePoint &a, const SpherePoint &b);

/// Scalar observable on the sphere. Carries an evaluator, optional analytic
/// partials in t and phi, and a band-limit hint used to size quadratures.
/// Missing partials fall back to central finite differences with h = 1e-5
/// (one-sided within h of t = +-1, wrapped in phi).
class SphereFunction {
  public:
    using Evaluator = std::function<double(const SpherePoint &)>;

    explicit SphereFunction(Evaluator evaluate);
    SphereFunction(Evaluator evaluate, Evaluator partial_t, Evaluator partial_phi);

    double operator()(const SpherePoint &p) const { return eval_(p); }
    double partial_t(const SpherePoint &p) const;
    double partial_phi(const SpherePoint &p) const;
    bool has_analytic_partials() const { return static_cast<bool>(dt_); }

    int band_limit() const { return band_limit_; }
    SphereFunction &with_band_limit(int limit) {
        band_limit_ = limit;
        return *this;
    }

    static SphereFunction constant(double value);
    /// Function of t alone, with optional derivative.
    static SphereFunction from_profile(std::function<double(double)> profile,
                                       std::function<double(double)> derivative = nullptr);

    SphereFunction operator+(const SphereFunction &other) const;
    SphereFunction operator*(const SphereFunction &other) const;
    SphereFunction operator*(double scale) const;

  private:
    Evaluator eval_;
    Evaluator dt_;
    Evaluator dphi_;
    int band_limit_ = -1;
};

/// Ambient coordinate functions with analytic partials.
SphereFunction coordinate_q1();
SphereFunction coordinate_q2();
SphereFunction coordinate_q3();

/// Product quadrature grid: n_t Gauss-Legendre nodes in t and n_phi uniform
/// azimuth nodes, with weights normalized so the total measure is 1.
class SphereGrid {
  public:
    SphereGrid(int n_t, int n_phi);

    int n_t() const { return static_cast<int>(t_nodes_.size()); }
    int n_phi() const { return static_cast<int>(phi_nodes_.size()); }
    double t(int i) const { return t_nodes_(i); }
    double phi(int l) const { return phi_nodes_(l); }
    /// Weight of every node in t-row i (phi nodes are uniform).
    double node_weight(int i) const { return t_weights_(i) / static_cast<double>(n_phi()); }
    /// Total weight of t-row i.
    double row_weight(int i) const { return t_weights_(i); }
    SpherePoint point(int i, int l) const { return {t_nodes_(i), phi_nodes_(l)}; }

    double integrate(const SphereFunction &f) const;
    double total_weight() const { return t_weights_.sum(); }

  private:
    RealVector t_nodes_;
    RealVector t_weights_; // normalized: sums to 1
    RealVector phi_nodes_;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (weights summing to 2).
void gauss_legendre(int n, RealVector &nodes, RealVector &weights);

struct BandInterval {
    double t_min = 0.0;
    double t_max = 0.0;
};

/// Cover element descriptor: a band in t or a geodesic cap.
struct CoverSet {
    enum class Kind { Band, Cap };
    Kind kind = Kind::Band;
    BandInterval band;
    SpherePoint cap_center;
    double cap_radius = 0.0;

    bool contains(const SpherePoint &p) const;
};

/// Nonnegative functions summing to 1, each supported in its cover element.
class PartitionOfUnity {
  public:
    PartitionOfUnity(std::vector<SphereFunction> functions, std::vector<CoverSet> cover);

    Eigen::Index size() const { return static_cast<Eigen::Index>(functions_.size()); }
    const SphereFunction &function(Eigen::Index j) const {
        return functions_[static_cast<std::size_t>(j)];
    }
    const CoverSet &cover(Eigen::Index j) const { return cover_[static_cast<std::size_t>(j)]; }

    PartitionOfUnity permuted(const std::vector<Eigen::Index> &order) const;

    struct ValidationReport {
        double min_value = 0.0;          // most negative function value seen
        double max_sum_defect = 0.0;     // max |sum_j f_j - 1|
        double max_outside_support = 0.0; // max f_j outside its cover element
    };
    ValidationReport validate(const SphereGrid &grid) const;

  private:
    std::vector<SphereFunction> functions_;
    std::vector<CoverSet> cover_;
};

/// Poisson bracket {f, g} = kappa * (d_phi f * d_t g - d_t f * d_phi g) with
/// kappa = 2. The scale and sign are pinned by the quantization calibration:
/// {q1, q2} = 2 q3, matching i*m*[T(q1), T(q2)] -> T({q1, q2}) as m grows.
SphereFunction poisson_bracket(const SphereFunction &f, const SphereFunction &g);

/// Max |f| over grid nodes (a lower bound of the true sup norm).
double sup_norm(const SphereFunction &f, const SphereGrid &grid);

struct NuClassicalResult {
    double value = 0.0;
    OutcomeVector witness_x;
    OutcomeVector witness_y;
    SpherePoint point;
};

/// Classical non-commutativity of a partition: the max over grid points of
/// the vertex maximum of the bilinear form with matrix {f_j, f_k}(p). Exact
/// vertex enumeration for N <= 20, alternating-sign heuristic above; always
/// a certified lower bound with witnesses.
NuClassicalResult nu_c(const PartitionOfUnity &p, const SphereGrid &grid,
                       const SearchBudget &budget);

/// N equal-width overlapping intervals covering [-1, 1].
std::vector<BandInterval> band_cover(int n, double overlap);

/// Partition of unity with cosine-taper ramps, subordinated to a band cover;
/// every function depends on t only. Requires the cover to have no gaps and
/// at most pairwise overlaps.
PartitionOfUnity band_partition(const std::vector<BandInterval> &cover);

/// Normalized radial bumps around the given cap centers: flat out to
/// plateau_fraction of the radius, then a cosine taper to zero. The flat core
/// keeps the normalizer of order one wherever caps overlap thinly. Throws
/// CoverageGap when the caps fail to cover the sphere (checked on the grid).
PartitionOfUnity cap_partition(const std::vector<SpherePoint> &centers, double radius,
                               const SphereGrid &grid, double plateau_fraction = 0.7);

/// Area fraction (1 - cos r) / 2 of a geodesic cap; < 1/2 makes a cap
/// displaceable on the unit-area sphere.
double cap_area_fraction(double radius);

/// Named cap layouts: "tetrahedron" (4), "octahedron" (6), "cube" (8),
/// "icosahedron" (12).
std::vector<SpherePoint> named_cap_centers(const std::string &name);

} // namespace povmlab
