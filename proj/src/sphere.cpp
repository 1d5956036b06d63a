#include "povmlab/sphere.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "parallel.hpp"

namespace povmlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFdStep = 1e-5;
constexpr double kPoissonKappa = 2.0;
constexpr int kNuExactCutoff = 20;

} // namespace

double wrap_phi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

Eigen::Vector3d embed(const SpherePoint &p) {
    const double s = std::sqrt(std::max(0.0, 1.0 - p.t * p.t));
    return {s * std::cos(p.phi), s * std::sin(p.phi), p.t};
}

double geodesic_angle(const SpherePoint &a, const SpherePoint &b) {
    const double dot = embed(a).dot(embed(b));
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

SphereFunction::SphereFunction(Evaluator evaluate) : eval_(std::move(evaluate)) {
    if (!eval_) throw InvalidValue("SphereFunction needs an evaluator");
}

SphereFunction::SphereFunction(Evaluator evaluate, Evaluator partial_t, Evaluator partial_phi)
    : eval_(std::move(evaluate)), dt_(std::move(partial_t)), dphi_(std::move(partial_phi)) {
    if (!eval_) throw InvalidValue("SphereFunction needs an evaluator");
    if (static_cast<bool>(dt_) != static_cast<bool>(dphi_)) {
        throw InvalidValue("SphereFunction needs both partials or neither");
    }
}

double SphereFunction::partial_t(const SpherePoint &p) const {
    if (dt_) return dt_(p);
    double lo = p.t - kFdStep;
    double hi = p.t + kFdStep;
    if (lo < -1.0) lo = p.t; // one-sided stencil near the poles
    if (hi > 1.0) hi = p.t;
    return (eval_({hi, p.phi}) - eval_({lo, p.phi})) / (hi - lo);
}

double SphereFunction::partial_phi(const SpherePoint &p) const {
    if (dphi_) return dphi_(p);
    const double ahead = eval_({p.t, wrap_phi(p.phi + kFdStep)});
    const double behind = eval_({p.t, wrap_phi(p.phi - kFdStep)});
    return (ahead - behind) / (2.0 * kFdStep);
}

SphereFunction SphereFunction::constant(double value) {
    SphereFunction f([value](const SpherePoint &) { return value; },
                     [](const SpherePoint &) { return 0.0; },
                     [](const SpherePoint &) { return 0.0; });
    f.band_limit_ = 0;
    return f;
}

SphereFunction SphereFunction::from_profile(std::function<double(double)> profile,
                                            std::function<double(double)> derivative) {
    if (!profile) throw InvalidValue("from_profile needs a profile");
    auto eval = [profile](const SpherePoint &p) { return profile(p.t); };
    if (derivative) {
        return SphereFunction(eval,
                              [derivative](const SpherePoint &p) { return derivative(p.t); },
                              [](const SpherePoint &) { return 0.0; });
    }
    return SphereFunction(eval);
}

SphereFunction SphereFunction::operator+(const SphereFunction &other) const {
    auto eval = [a = eval_, b = other.eval_](const SpherePoint &p) { return a(p) + b(p); };
    if (dt_ && other.dt_) {
        return SphereFunction(
            eval, [a = dt_, b = other.dt_](const SpherePoint &p) { return a(p) + b(p); },
            [a = dphi_, b = other.dphi_](const SpherePoint &p) { return a(p) + b(p); });
    }
    return SphereFunction(eval);
}

SphereFunction SphereFunction::operator*(const SphereFunction &other) const {
    auto eval = [a = eval_, b = other.eval_](const SpherePoint &p) { return a(p) * b(p); };
    if (dt_ && other.dt_) {
        return SphereFunction(eval,
                              [a = eval_, da = dt_, b = other.eval_,
                               db = other.dt_](const SpherePoint &p) {
                                  return da(p) * b(p) + a(p) * db(p);
                              },
                              [a = eval_, da = dphi_, b = other.eval_,
                               db = other.dphi_](const SpherePoint &p) {
                                  return da(p) * b(p) + a(p) * db(p);
                              });
    }
    return SphereFunction(eval);
}

SphereFunction SphereFunction::operator*(double scale) const {
    auto eval = [a = eval_, scale](const SpherePoint &p) { return scale * a(p); };
    if (dt_) {
        return SphereFunction(eval,
                              [d = dt_, scale](const SpherePoint &p) { return scale * d(p); },
                              [d = dphi_, scale](const SpherePoint &p) { return scale * d(p); });
    }
    return SphereFunction(eval);
}

SphereFunction coordinate_q1() {
    return SphereFunction(
        [](const SpherePoint &p) { return std::sqrt(std::max(0.0, 1.0 - p.t * p.t)) * std::cos(p.phi); },
        [](const SpherePoint &p) {
            const double s = std::sqrt(std::max(1e-300, 1.0 - p.t * p.t));
            return -p.t / s * std::cos(p.phi);
        },
        [](const SpherePoint &p) {
            return -std::sqrt(std::max(0.0, 1.0 - p.t * p.t)) * std::sin(p.phi);
        });
}

SphereFunction coordinate_q2() {
    return SphereFunction(
        [](const SpherePoint &p) { return std::sqrt(std::max(0.0, 1.0 - p.t * p.t)) * std::sin(p.phi); },
        [](const SpherePoint &p) {
            const double s = std::sqrt(std::max(1e-300, 1.0 - p.t * p.t));
            return -p.t / s * std::sin(p.phi);
        },
        [](const SpherePoint &p) {
            return std::sqrt(std::max(0.0, 1.0 - p.t * p.t)) * std::cos(p.phi);
        });
}

SphereFunction coordinate_q3() {
    return SphereFunction([](const SpherePoint &p) { return p.t; },
                          [](const SpherePoint &) { return 1.0; },
                          [](const SpherePoint &) { return 0.0; });
}

void gauss_legendre(int n, RealVector &nodes, RealVector &weights) {
    if (n < 1) throw InvalidValue("gauss_legendre needs n >= 1");
    nodes.resize(n);
    weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes(i) = -x;
        nodes(n - 1 - i) = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights(i) = w;
        weights(n - 1 - i) = w;
    }
    if (n % 2 == 1) nodes(half - 1) = 0.0;
}

SphereGrid::SphereGrid(int n_t, int n_phi) {
    if (n_t < 1 || n_phi < 1) throw InvalidValue("SphereGrid needs positive node counts");
    RealVector glw;
    gauss_legendre(n_t, t_nodes_, glw);
    t_weights_ = glw / 2.0; // normalized measure: total 1
    phi_nodes_.resize(n_phi);
    for (int l = 0; l < n_phi; ++l) phi_nodes_(l) = kTwoPi * l / n_phi;
}

double SphereGrid::integrate(const SphereFunction &f) const {
    double total = 0.0;
    for (int i = 0; i < n_t(); ++i) {
        double row = 0.0;
        for (int l = 0; l < n_phi(); ++l) row += f(point(i, l));
        total += t_weights_(i) * row / static_cast<double>(n_phi());
    }
    return total;
}

bool CoverSet::contains(const SpherePoint &p) const {
    if (kind == Kind::Band) return p.t > band.t_min && p.t < band.t_max;
    return geodesic_angle(p, cap_center) < cap_radius;
}

PartitionOfUnity::PartitionOfUnity(std::vector<SphereFunction> functions,
                                   std::vector<CoverSet> cover)
    : functions_(std::move(functions)), cover_(std::move(cover)) {
    if (functions_.empty() || functions_.size() != cover_.size()) {
        throw InvalidValue("PartitionOfUnity needs matching functions and cover elements");
    }
}

PartitionOfUnity PartitionOfUnity::permuted(const std::vector<Eigen::Index> &order) const {
    if (order.size() != functions_.size()) {
        throw DimensionMismatch("permuted: order length mismatch");
    }
    std::vector<SphereFunction> fs;
    std::vector<CoverSet> cs;
    for (Eigen::Index j : order) {
        fs.push_back(functions_[static_cast<std::size_t>(j)]);
        cs.push_back(cover_[static_cast<std::size_t>(j)]);
    }
    return PartitionOfUnity(std::move(fs), std::move(cs));
}

PartitionOfUnity::ValidationReport PartitionOfUnity::validate(const SphereGrid &grid) const {
    ValidationReport report;
    for (int i = 0; i < grid.n_t(); ++i) {
        for (int l = 0; l < grid.n_phi(); ++l) {
            const SpherePoint p = grid.point(i, l);
            double sum = 0.0;
            for (std::size_t j = 0; j < functions_.size(); ++j) {
                const double value = functions_[j](p);
                sum += value;
                report.min_value = std::min(report.min_value, value);
                if (!cover_[j].contains(p)) {
                    report.max_outside_support = std::max(report.max_outside_support, value);
                }
            }
            report.max_sum_defect = std::max(report.max_sum_defect, std::abs(sum - 1.0));
        }
    }
    return report;
}

SphereFunction poisson_bracket(const SphereFunction &f, const SphereFunction &g) {
    return SphereFunction([f, g](const SpherePoint &p) {
        return kPoissonKappa * (f.partial_phi(p) * g.partial_t(p) - f.partial_t(p) * g.partial_phi(p));
    });
}

double sup_norm(const SphereFunction &f, const SphereGrid &grid) {
    double best = 0.0;
    for (int i = 0; i < grid.n_t(); ++i) {
        for (int l = 0; l < grid.n_phi(); ++l) {
            const double value = std::abs(f(grid.point(i, l)));
            if (!std::isfinite(value)) throw InvalidValue("sup_norm: non-finite evaluation");
            best = std::max(best, value);
        }
    }
    return best;
}

namespace {

// Best sign vector x for the rank-two bracket matrix at one point; the inner
// max over y is the l1 norm of B^T x, so only x is searched.
double nu_node_best(const RealVector &u, const RealVector &v, const SearchBudget &budget,
                    std::uint64_t node_seed, RealVector &best_x) {
    const Eigen::Index n = u.size();
    auto score = [&](double a, double b) {
        double value = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) value += std::abs(a * v(k) - b * u(k));
        return kPoissonKappa * value;
    };

    double best = -1.0;
    if (n <= kNuExactCutoff) {
        // Gray-code walk over sign vectors with x_0 pinned to +1 (B is
        // antisymmetric, so (x, y) and (-x, -y) tie).
        RealVector x = RealVector::Ones(n);
        double a = u.sum();
        double b = v.sum();
        const std::uint64_t count = 1ULL << (n - 1);
        for (std::uint64_t code = 0;; ++code) {
            const double value = score(a, b);
            if (value > best) {
                best = value;
                best_x = x;
            }
            if (code + 1 >= count) break;
            const Eigen::Index flip = 1 + std::countr_zero(code + 1);
            x(flip) = -x(flip);
            a += 2.0 * x(flip) * u(flip);
            b += 2.0 * x(flip) * v(flip);
        }
        return best;
    }

    // Alternating sign maximization from seeded random starts.
    std::mt19937_64 rng(node_seed);
    for (int s = 0; s < std::max(1, budget.starts); ++s) {
        RealVector x(n);
        for (Eigen::Index j = 0; j < n; ++j) x(j) = (rng() & 1ULL) ? 1.0 : -1.0;
        double value = -1.0;
        for (int it = 0; it < 50; ++it) {
            const double a = u.dot(x);
            const double b = v.dot(x);
            RealVector y(n);
            for (Eigen::Index k = 0; k < n; ++k) y(k) = (a * v(k) - b * u(k)) >= 0.0 ? 1.0 : -1.0;
            const double trial = score(a, b);
            if (trial <= value + 1e-15) break;
            value = trial;
            const double uy = u.dot(y);
            const double vy = v.dot(y);
            // maximize x . (B y): (B y)_k = kappa (u_k vy - v_k uy)
            for (Eigen::Index k = 0; k < n; ++k) x(k) = (u(k) * vy - v(k) * uy) >= 0.0 ? 1.0 : -1.0;
        }
        if (value > best) {
            best = value;
            best_x = x;
        }
    }
    return best;
}

} // namespace

NuClassicalResult nu_c(const PartitionOfUnity &p, const SphereGrid &grid,
                       const SearchBudget &budget) {
    const Eigen::Index n = p.size();
    NuClassicalResult best{0.0, OutcomeVector::ones(n), OutcomeVector::ones(n), grid.point(0, 0)};
    if (n == 1) return best;

    RealVector u(n), v(n); // u = d_phi f, v = d_t f at the current point
    for (int i = 0; i < grid.n_t(); ++i) {
        for (int l = 0; l < grid.n_phi(); ++l) {
            const SpherePoint pt = grid.point(i, l);
            for (Eigen::Index j = 0; j < n; ++j) {
                u(j) = p.function(j).partial_phi(pt);
                v(j) = p.function(j).partial_t(pt);
            }
            // B_{jk} = {f_j, f_k}(pt) = kappa (u_j v_k - v_j u_k): rank two,
            // so |x^T B y| <= 2 kappa |u|_1 |v|_1 prunes quiet nodes.
            const double bound = 2.0 * kPoissonKappa * u.cwiseAbs().sum() * v.cwiseAbs().sum();
            if (bound <= best.value) continue;

            RealVector x(n);
            const std::uint64_t node_seed =
                detail::mix_seed(budget.seed, static_cast<std::uint64_t>(i) * 1000003ULL +
                                                  static_cast<std::uint64_t>(l));
            const double node_best = nu_node_best(u, v, budget, node_seed, x);
            if (node_best > best.value) {
                const double a = u.dot(x);
                const double b = v.dot(x);
                RealVector y(n);
                for (Eigen::Index k = 0; k < n; ++k) {
                    y(k) = (a * v(k) - b * u(k)) >= 0.0 ? 1.0 : -1.0;
                }
                best.value = node_best;
                best.witness_x = OutcomeVector(x);
                best.witness_y = OutcomeVector(y);
                best.point = pt;
            }
        }
    }
    return best;
}

std::vector<BandInterval> band_cover(int n, double overlap) {
    if (n < 2) throw InvalidValue("band_cover needs N >= 2");
    const double width = (2.0 + (n - 1) * overlap) / n;
    if (overlap <= 0.0 || overlap >= width) {
        throw InvalidValue("band_cover overlap must lie in (0, interval width)");
    }
    std::vector<BandInterval> cover;
    cover.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double start = -1.0 + j * (width - overlap);
        // the last interval ends at the pole exactly, rounding notwithstanding
        const double end = (j == n - 1) ? 1.0 : start + width;
        cover.push_back({start, end});
    }
    return cover;
}

PartitionOfUnity band_partition(const std::vector<BandInterval> &cover) {
    const int n = static_cast<int>(cover.size());
    if (n < 1) throw InvalidValue("band_partition needs a nonempty cover");
    for (int j = 0; j + 1 < n; ++j) {
        if (cover[j + 1].t_min >= cover[j].t_max) {
            throw InvalidValue("band cover has a gap before interval " + std::to_string(j + 1));
        }
        if (j > 0 && cover[j + 1].t_min < cover[j - 1].t_max) {
            throw InvalidValue("band cover overlaps more than pairwise at interval " +
                               std::to_string(j));
        }
    }
    if (n > 1 && (cover.front().t_min > -1.0 || cover.back().t_max < 1.0)) {
        throw InvalidValue("band cover does not reach the poles");
    }

    // Each function is 1 on its core and follows a cos^2 ramp across the
    // overlap with its neighbor, so consecutive ramps sum to 1 exactly.
    std::vector<SphereFunction> functions;
    std::vector<CoverSet> sets;
    for (int j = 0; j < n; ++j) {
        const bool first = (j == 0);
        const bool last = (j == n - 1);
        const double up_a = cover[j].t_min;                 // ramp up over [up_a, up_b]
        const double up_b = first ? up_a : cover[j - 1].t_max;
        const double down_a = last ? cover[j].t_max : cover[j + 1].t_min;
        const double down_b = cover[j].t_max;               // ramp down over [down_a, down_b]
        auto profile = [=](double t) {
            if (!first && t <= up_a) return 0.0;
            if (!last && t >= down_b) return 0.0;
            if (!first && t < up_b) {
                const double arg = 0.5 * std::numbers::pi * (t - up_a) / (up_b - up_a);
                const double s = std::sin(arg);
                return s * s;
            }
            if (!last && t > down_a) {
                const double arg = 0.5 * std::numbers::pi * (t - down_a) / (down_b - down_a);
                const double c = std::cos(arg);
                return c * c;
            }
            return 1.0;
        };
        auto derivative = [=](double t) {
            if (!first && t > up_a && t < up_b) {
                const double w = up_b - up_a;
                return 0.5 * std::numbers::pi / w *
                       std::sin(std::numbers::pi * (t - up_a) / w);
            }
            if (!last && t > down_a && t < down_b) {
                const double w = down_b - down_a;
                return -0.5 * std::numbers::pi / w *
                       std::sin(std::numbers::pi * (t - down_a) / w);
            }
            return 0.0;
        };
        functions.push_back(SphereFunction::from_profile(profile, derivative));
        CoverSet set;
        set.kind = CoverSet::Kind::Band;
        set.band = cover[j];
        // Pole bands are closed at the pole ends.
        if (first) set.band.t_min = std::min(set.band.t_min, -1.5);
        if (last) set.band.t_max = std::max(set.band.t_max, 1.5);
        sets.push_back(set);
    }
    return PartitionOfUnity(std::move(functions), std::move(sets));
}

PartitionOfUnity cap_partition(const std::vector<SpherePoint> &centers, double radius,
                               const SphereGrid &grid, double plateau_fraction) {
    const int n = static_cast<int>(centers.size());
    if (n < 1) throw InvalidValue("cap_partition needs at least one center");
    if (radius <= 0.0 || radius > std::numbers::pi) {
        throw InvalidValue("cap_partition radius must lie in (0, pi]");
    }
    if (plateau_fraction < 0.0 || plateau_fraction >= 1.0) {
        throw InvalidValue("cap_partition plateau_fraction must lie in [0, 1)");
    }
    auto bump = [radius, plateau_fraction](double angle) {
        const double u = angle / radius;
        if (u >= 1.0) return 0.0;
        if (u <= plateau_fraction) return 1.0;
        const double c =
            std::cos(0.5 * std::numbers::pi * (u - plateau_fraction) / (1.0 - plateau_fraction));
        return c * c;
    };

    // Coverage check: the normalizer must stay bounded away from zero.
    double worst_sum = std::numeric_limits<double>::infinity();
    SpherePoint worst_point{};
    for (int i = 0; i < grid.n_t(); ++i) {
        for (int l = 0; l < grid.n_phi(); ++l) {
            const SpherePoint p = grid.point(i, l);
            double sum = 0.0;
            for (const auto &center : centers) sum += bump(geodesic_angle(p, center));
            if (sum < worst_sum) {
                worst_sum = sum;
                worst_point = p;
            }
        }
    }
    if (worst_sum <= 1e-6) {
        throw CoverageGap("caps fail to cover the sphere", worst_point.t, worst_point.phi);
    }

    std::vector<SphereFunction> functions;
    std::vector<CoverSet> sets;
    for (int j = 0; j < n; ++j) {
        const SpherePoint center = centers[static_cast<std::size_t>(j)];
        functions.emplace_back([centers, center, bump](const SpherePoint &p) {
            double total = 0.0;
            for (const auto &other : centers) total += bump(geodesic_angle(p, other));
            if (total <= 0.0) return 0.0;
            return bump(geodesic_angle(p, center)) / total;
        });
        CoverSet set;
        set.kind = CoverSet::Kind::Cap;
        set.cap_center = center;
        set.cap_radius = radius;
        sets.push_back(set);
    }
    return PartitionOfUnity(std::move(functions), std::move(sets));
}

double cap_area_fraction(double radius) { return 0.5 * (1.0 - std::cos(radius)); }

std::vector<SpherePoint> named_cap_centers(const std::string &name) {
    auto from_xyz = [](double x, double y, double z) {
        const double norm = std::sqrt(x * x + y * y + z * z);
        return SpherePoint{z / norm, wrap_phi(std::atan2(y, x))};
    };
    if (name == "tetrahedron") {
        return {from_xyz(1, 1, 1), from_xyz(1, -1, -1), from_xyz(-1, 1, -1), from_xyz(-1, -1, 1)};
    }
    if (name == "octahedron") {
        return {from_xyz(1, 0, 0),  from_xyz(-1, 0, 0), from_xyz(0, 1, 0),
                from_xyz(0, -1, 0), from_xyz(0, 0, 1),  from_xyz(0, 0, -1)};
    }
    if (name == "cube") {
        std::vector<SpherePoint> centers;
        for (double x : {-1.0, 1.0}) {
            for (double y : {-1.0, 1.0}) {
                for (double z : {-1.0, 1.0}) centers.push_back(from_xyz(x, y, z));
            }
        }
        return centers;
    }
    if (name == "icosahedron") {
        const double g = (1.0 + std::sqrt(5.0)) / 2.0;
        std::vector<SpherePoint> centers;
        for (double a : {-1.0, 1.0}) {
            for (double b : {-g, g}) {
                centers.push_back(from_xyz(0, a, b));
                centers.push_back(from_xyz(a, b, 0));
                centers.push_back(from_xyz(b, 0, a));
            }
        }
        return centers;
    }
    throw InvalidValue("unknown cap layout: " + name);
}

} // namespace povmlab
