#include "povmlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "parallel.hpp"

namespace povmlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double> &v) { return v ? fmt(*v) : std::string(); }

std::string fmt_opt(const std::optional<int> &v) {
    return v ? std::to_string(*v) : std::string();
}

std::string fmt_opt(const std::optional<long> &v) {
    return v ? std::to_string(*v) : std::string();
}

std::string vec_str(const std::string &name, const RealVector &v) {
    std::string s = name + "=[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) s += " ";
        s += fmt(v(i));
    }
    return s + "]";
}

std::string witnesses_str(const OutcomeVector &noise_witness, const OutcomeVector &x,
                          const OutcomeVector &y) {
    return vec_str("noise", noise_witness.vec()) + ";" + vec_str("x", x.vec()) + ";" +
           vec_str("y", y.vec());
}

std::string sanitize(std::string text) {
    for (char &c : text) {
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    }
    return text;
}

SearchBudget row_budget(const ScenarioConfig &cfg, std::uint64_t salt) {
    SearchBudget b = cfg.budget;
    b.seed = detail::mix_seed(cfg.seed, salt);
    return b;
}

SphereGrid paired_grid(int m) { return SphereGrid(std::max(64, m + 1), std::max(128, 2 * m + 2)); }

double plateau_height(const PartitionOfUnity &p, const SphereGrid &grid) {
    // max over the grid of f_1 - f_1^2
    double best = 0.0;
    for (int i = 0; i < grid.n_t(); ++i) {
        for (int l = 0; l < grid.n_phi(); ++l) {
            const double v = p.function(0)(grid.point(i, l));
            best = std::max(best, v - v * v);
        }
    }
    return best;
}

struct LayoutChoice {
    std::string name;
    double radius;
};

LayoutChoice layout_for(int n) {
    // radius = covering radius of the layout plus a fixed conditioning margin
    switch (n) {
    case 4: return {"tetrahedron", 1.55};
    case 6: return {"octahedron", 1.26};
    case 8: return {"cube", 1.26};
    case 12: return {"icosahedron", 0.96};
    default:
        throw InvalidValue("scaling-in-N has no cap layout for N=" + std::to_string(n) +
                           " (supported: 4, 6, 8, 12)");
    }
}

Report scenario_quantized(const ScenarioConfig &cfg) {
    const bool caps = cfg.scenario == "displaceable-caps";
    Report report;
    report.scenario = cfg.scenario;

    const int m_max = cfg.m_list.back();
    const SphereGrid fine = paired_grid(m_max);
    const PartitionOfUnity partition = build_partition(cfg.partition, fine);
    const auto nuc = nu_c(partition, fine, row_budget(cfg, 0));
    const double alpha_floor =
        cfg.tol("alpha_fraction", 0.9) * plateau_height(partition, fine);

    double worst_nu_q = 0.0;
    double min_noise_at_max = std::numeric_limits<double>::quiet_NaN();
    bool rows_ok = true;
    bool sharp_ok = true;
    double window_min = std::numeric_limits<double>::infinity();
    double window_max = 0.0;
    double min_windowed_nu_q = std::numeric_limits<double>::infinity();
    const int m_min = static_cast<int>(cfg.tol("m_min", 32));

    for (std::size_t r = 0; r < cfg.m_list.size(); ++r) {
        const int m = cfg.m_list[r];
        ReportRow row;
        row.scenario = cfg.scenario;
        row.m = m;
        row.n = static_cast<long>(partition.size());
        row.nu_c = nuc.value;
        const auto t0 = Clock::now();
        try {
            ToeplitzContext ctx(m);
            const FinitePovm quantized = quantize_partition(ctx, partition);
            const SearchBudget budget = row_budget(cfg, r + 1);
            const auto nq = noncommutativity(quantized, budget);
            const auto noise = noise_magnitude(quantized, budget);
            const auto bracket = systematic_noise_bracket(quantized, budget);
            row.nu_q = nq.value;
            row.noise_lower = noise.value;
            row.ns_lower = bracket.lower;
            row.ns_upper = bracket.upper;
            row.m_times_nu_q = m * nq.value;
            row.witnesses = witnesses_str(noise.witness, nq.witness_x, nq.witness_y);
            worst_nu_q = std::max(worst_nu_q, nq.value);
            sharp_ok = sharp_ok && bracket.upper == 0.0;
            if (m == m_max) min_noise_at_max = noise.value;
            if (m >= m_min) {
                window_min = std::min(window_min, m * nq.value);
                window_max = std::max(window_max, m * nq.value);
                min_windowed_nu_q = std::min(min_windowed_nu_q, nq.value);
            }
        } catch (const std::exception &e) {
            row.note = sanitize(std::string("error=") + e.what());
            rows_ok = false;
        }
        row.wall_ms = elapsed_ms(t0);
        report.rows.push_back(std::move(row));
    }

    if (!caps) {
        const double zero_tol = cfg.tol("nu_q_zero", 1e-9);
        report.verdicts.push_back({"nu_q_zero", rows_ok && worst_nu_q <= zero_tol,
                                   "max nu_q = " + fmt(worst_nu_q) + " (tol " + fmt(zero_tol) +
                                       ")"});
        report.verdicts.push_back(
            {"sharp_unsmearing", rows_ok && sharp_ok,
             sharp_ok ? "ns_upper = 0 via commutative unsmearing for every m"
                      : "some row lacks a sharp unsmearing"});
        report.verdicts.push_back(
            {"noise_floor",
             rows_ok && !std::isnan(min_noise_at_max) && min_noise_at_max >= alpha_floor,
             "noise(m=" + std::to_string(m_max) + ") = " + fmt(min_noise_at_max) +
                 " >= alpha = " + fmt(alpha_floor)});
    } else {
        const double nu_q_min = cfg.tol("nu_q_min", 1e-4);
        const double ratio_cap = cfg.tol("window_ratio", 2.0);
        const bool has_window = std::isfinite(min_windowed_nu_q);
        const bool positive = rows_ok && has_window && min_windowed_nu_q > nu_q_min;
        report.verdicts.push_back({"nu_q_positive", positive,
                                   "min nu_q over m >= " + std::to_string(m_min) + " is " +
                                       fmt(min_windowed_nu_q) + " (> " + fmt(nu_q_min) + ")"});
        const double ratio = window_min > 0.0 ? window_max / window_min
                                              : std::numeric_limits<double>::infinity();
        report.verdicts.push_back({"scaling_window", rows_ok && ratio <= ratio_cap,
                                   "max/min of m*nu_q = " + fmt(ratio) + " (cap " +
                                       fmt(ratio_cap) + ")"});
        const double area = cap_area_fraction(cfg.partition.radius);
        report.verdicts.push_back({"cap_area", area < 0.5,
                                   "cap area fraction = " + fmt(area) + " (displaceable < 0.5)"});
    }
    return report;
}

Report scenario_scaling(const ScenarioConfig &cfg) {
    Report report;
    report.scenario = cfg.scenario;
    const SphereGrid grid(64, 128);

    std::vector<double> log_n, log_nu;
    for (std::size_t r = 0; r < cfg.n_list.size(); ++r) {
        const int n = cfg.n_list[r];
        ReportRow row;
        row.scenario = cfg.scenario;
        row.n = n;
        const auto t0 = Clock::now();
        try {
            const LayoutChoice layout = layout_for(n);
            const auto centers = named_cap_centers(layout.name);
            const PartitionOfUnity partition = cap_partition(centers, layout.radius, grid);
            const auto result = nu_c(partition, grid, row_budget(cfg, r + 1));
            row.nu_c = result.value;
            row.witnesses = vec_str("x", result.witness_x.vec()) + ";" +
                            vec_str("y", result.witness_y.vec()) + ";point=(" +
                            fmt(result.point.t) + " " + fmt(result.point.phi) + ")";
            row.note = "layout=" + layout.name + ";radius=" + fmt(layout.radius);
            if (result.value > 0.0) {
                log_n.push_back(std::log(static_cast<double>(n)));
                log_nu.push_back(std::log(result.value));
            }
        } catch (const std::exception &e) {
            row.note = sanitize(std::string("error=") + e.what());
        }
        row.wall_ms = elapsed_ms(t0);
        report.rows.push_back(std::move(row));
    }

    // Least squares exponent of nu_c ~ N^e; reported, not judged.
    std::string detail = "insufficient data";
    if (log_n.size() >= 2) {
        const double mean_x = std::accumulate(log_n.begin(), log_n.end(), 0.0) / log_n.size();
        const double mean_y = std::accumulate(log_nu.begin(), log_nu.end(), 0.0) / log_nu.size();
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            num += (log_n[i] - mean_x) * (log_nu[i] - mean_y);
            den += (log_n[i] - mean_x) * (log_n[i] - mean_x);
        }
        const double exponent = num / den;
        detail = "exponent=" + fmt(exponent);
        ReportRow summary;
        summary.scenario = cfg.scenario;
        summary.note = "fit_exponent=" + fmt(exponent);
        report.rows.push_back(std::move(summary));
    }
    report.verdicts.push_back({"scaling_fit", true, detail});
    return report;
}

Report scenario_janssens(const ScenarioConfig &cfg) {
    Report report;
    report.scenario = cfg.scenario;
    const auto t0 = Clock::now();

    double min_residual = std::numeric_limits<double>::infinity();
    std::map<std::pair<int, int>, double> group_min;
    for (int c = 0; c < cfg.fuzz_cases; ++c) {
        std::mt19937_64 rng(detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(c)));
        std::uniform_int_distribution<int> dim_pick(cfg.fuzz_dim_min, cfg.fuzz_dim_max);
        std::uniform_int_distribution<int> n_pick(cfg.fuzz_n_min, cfg.fuzz_n_max);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const int dim = dim_pick(rng);
        const int n = n_pick(rng);
        const FinitePovm povm = random_povm(dim, n, rng());
        for (int pair = 0; pair < 5; ++pair) {
            RealVector x(n), y(n);
            for (int j = 0; j < n; ++j) x(j) = unit(rng);
            for (int j = 0; j < n; ++j) y(j) = unit(rng);
            const double residual =
                janssens_residual(povm, OutcomeVector(x), OutcomeVector(y));
            min_residual = std::min(min_residual, residual);
            auto key = std::make_pair(dim, n);
            auto it = group_min.find(key);
            if (it == group_min.end()) {
                group_min[key] = residual;
            } else {
                it->second = std::min(it->second, residual);
            }
        }
    }

    for (const auto &[key, value] : group_min) {
        ReportRow row;
        row.scenario = cfg.scenario;
        row.n = key.second;
        row.note = "dim=" + std::to_string(key.first) + ";min_residual=" + fmt(value);
        report.rows.push_back(std::move(row));
    }
    if (!report.rows.empty()) report.rows.front().wall_ms = elapsed_ms(t0);

    const double tol = cfg.tol("janssens_tol", 1e-9);
    report.verdicts.push_back({"residual_nonnegative", min_residual >= -tol,
                               "min residual over " + std::to_string(cfg.fuzz_cases) +
                                   " POVMs x 5 pairs = " + fmt(min_residual)});
    return report;
}

Report scenario_registration(const ScenarioConfig &cfg) {
    Report report;
    report.scenario = cfg.scenario;
    ReportRow row;
    row.scenario = cfg.scenario;
    const auto t0 = Clock::now();
    try {
        const SphereGrid grid(cfg.registration_n_t, cfg.registration_n_phi);
        const PartitionOfUnity partition = build_partition(cfg.partition, grid);
        const FinitePovm multiplication = classical_registration_povm(partition, grid);
        row.n = static_cast<long>(partition.size());
        const SearchBudget budget = row_budget(cfg, 1);
        const auto noise = noise_magnitude(multiplication, budget);
        const auto bracket = systematic_noise_bracket(multiplication, budget);
        const auto nq = noncommutativity(multiplication, budget);
        const auto sharp = unsmear_commutative(multiplication);
        row.nu_q = nq.value;
        row.noise_lower = noise.value;
        row.ns_lower = bracket.lower;
        row.ns_upper = bracket.upper;
        row.witnesses = witnesses_str(noise.witness, nq.witness_x, nq.witness_y);
        row.note = "dim=" + std::to_string(grid.n_t() * grid.n_phi()) +
                   ";sharp_outcomes=" + std::to_string(sharp.projectors.outcomes());

        const double quarter = cfg.tol("noise_quarter", 0.25) - 1e-9;
        report.verdicts.push_back({"noise_quarter", noise.value >= quarter,
                                   "noise = " + fmt(noise.value) + " >= " + fmt(quarter)});
        const bool zero_bracket = bracket.lower == 0.0 && bracket.upper == 0.0;
        report.verdicts.push_back({"sharp_unsmearing", zero_bracket,
                                   "systematic noise bracket = (" + fmt(bracket.lower) + ", " +
                                       fmt(bracket.upper) + ")"});
    } catch (const std::exception &e) {
        row.note = sanitize(std::string("error=") + e.what());
        report.verdicts.push_back({"noise_quarter", false, row.note});
        report.verdicts.push_back({"sharp_unsmearing", false, row.note});
    }
    row.wall_ms = elapsed_ms(t0);
    report.rows.push_back(std::move(row));
    return report;
}

} // namespace

PartitionSpec PartitionSpec::from_json(const Json &j) {
    PartitionSpec spec;
    spec.type = j.at("type").get<std::string>();
    if (spec.type == "bands") {
        spec.n = j.value("N", 3);
        spec.overlap = j.value("overlap", 0.4);
        spec.layout.clear();
    } else if (spec.type == "caps") {
        spec.radius = j.value("radius", 1.55);
        if (!j.contains("centers")) {
            spec.layout = "tetrahedron";
        } else if (j.at("centers").is_string()) {
            spec.layout = j.at("centers").get<std::string>();
        } else {
            spec.layout.clear();
            for (const auto &c : j.at("centers")) {
                spec.centers.push_back({c.at(0).get<double>(), wrap_phi(c.at(1).get<double>())});
            }
        }
    } else {
        throw InvalidValue("partition type must be 'bands' or 'caps', got '" + spec.type + "'");
    }
    return spec;
}

Json PartitionSpec::to_json() const {
    if (type == "bands") {
        return Json{{"type", type}, {"N", n}, {"overlap", overlap}};
    }
    Json j{{"type", type}, {"radius", radius}};
    if (!layout.empty()) {
        j["centers"] = layout;
    } else {
        Json centers_json = Json::array();
        for (const auto &c : centers) centers_json.push_back(Json::array({c.t, c.phi}));
        j["centers"] = std::move(centers_json);
    }
    return j;
}

PartitionOfUnity build_partition(const PartitionSpec &spec, const SphereGrid &grid) {
    if (spec.type == "bands") {
        return band_partition(band_cover(spec.n, spec.overlap));
    }
    const auto centers = spec.layout.empty() ? spec.centers : named_cap_centers(spec.layout);
    return cap_partition(centers, spec.radius, grid);
}

const std::vector<std::string> &scenario_names() {
    static const std::vector<std::string> names = {
        "commutative-bands", "displaceable-caps", "scaling-in-N", "janssens-fuzz",
        "registration-classical"};
    return names;
}

ScenarioConfig ScenarioConfig::from_json(const Json &j) {
    ScenarioConfig cfg;
    cfg.scenario = j.at("scenario").get<std::string>();
    const auto &names = scenario_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end()) {
        throw InvalidValue("unknown scenario '" + cfg.scenario + "'");
    }
    if (!j.contains("seed")) {
        throw InvalidValue("config must carry a seed; reports are reproducible");
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("m_list")) {
        cfg.m_list = j.at("m_list").get<std::vector<int>>();
        if (cfg.m_list.empty() || !std::is_sorted(cfg.m_list.begin(), cfg.m_list.end()) ||
            std::adjacent_find(cfg.m_list.begin(), cfg.m_list.end()) != cfg.m_list.end() ||
            cfg.m_list.front() < 1) {
            throw InvalidValue("m_list must be nonempty, ascending, and positive");
        }
    }
    if (j.contains("partition")) {
        cfg.partition = PartitionSpec::from_json(j.at("partition"));
    } else if (cfg.scenario == "commutative-bands" || cfg.scenario == "registration-classical") {
        cfg.partition = PartitionSpec{"bands", 3, 0.4, "", {}, 0.0};
    }
    if ((cfg.scenario == "commutative-bands" || cfg.scenario == "registration-classical") &&
        cfg.partition.type != "bands") {
        throw InvalidValue(cfg.scenario + " needs a bands partition");
    }
    if (cfg.scenario == "displaceable-caps" && cfg.partition.type != "caps") {
        throw InvalidValue("displaceable-caps needs a caps partition");
    }
    if (j.contains("budget")) {
        const auto &b = j.at("budget");
        cfg.budget.starts = b.value("starts", cfg.budget.starts);
        cfg.budget.iterations = b.value("iterations", cfg.budget.iterations);
        cfg.budget.exhaustive_cutoff = b.value("exhaustive_cutoff", cfg.budget.exhaustive_cutoff);
        cfg.budget.step = b.value("step", cfg.budget.step);
    }
    cfg.output = j.value("output", cfg.output);
    if (j.contains("tolerances")) {
        for (const auto &[key, value] : j.at("tolerances").items()) {
            cfg.tolerances[key] = value.get<double>();
        }
    }
    if (j.contains("N_list")) {
        cfg.n_list = j.at("N_list").get<std::vector<int>>();
        if (cfg.n_list.empty()) throw InvalidValue("N_list must be nonempty");
    }
    cfg.fuzz_cases = j.value("cases", cfg.fuzz_cases);
    if (j.contains("dims")) {
        cfg.fuzz_dim_min = j.at("dims").at(0).get<int>();
        cfg.fuzz_dim_max = j.at("dims").at(1).get<int>();
    }
    if (j.contains("outcomes")) {
        cfg.fuzz_n_min = j.at("outcomes").at(0).get<int>();
        cfg.fuzz_n_max = j.at("outcomes").at(1).get<int>();
    }
    if (j.contains("registration_grid")) {
        cfg.registration_n_t = j.at("registration_grid").at(0).get<int>();
        cfg.registration_n_phi = j.at("registration_grid").at(1).get<int>();
    }
    return cfg;
}

bool Report::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const Verdict &v) { return v.pass; });
}

Report run_scenario(const ScenarioConfig &cfg) {
    const auto t0 = Clock::now();
    Report report;
    if (cfg.scenario == "commutative-bands" || cfg.scenario == "displaceable-caps") {
        report = scenario_quantized(cfg);
    } else if (cfg.scenario == "scaling-in-N") {
        report = scenario_scaling(cfg);
    } else if (cfg.scenario == "janssens-fuzz") {
        report = scenario_janssens(cfg);
    } else if (cfg.scenario == "registration-classical") {
        report = scenario_registration(cfg);
    } else {
        throw InvalidValue("unknown scenario '" + cfg.scenario + "'");
    }
    report.total_wall_ms = elapsed_ms(t0);
    return report;
}

std::string report_csv(const Report &report) {
    std::ostringstream out;
    out << "scenario,m,N,nu_c,nu_q,noise_lower,ns_lower,ns_upper,m_times_nu_q,witnesses,note\n";
    for (const auto &row : report.rows) {
        out << row.scenario << "," << fmt_opt(row.m) << "," << fmt_opt(row.n) << ","
            << fmt_opt(row.nu_c) << "," << fmt_opt(row.nu_q) << "," << fmt_opt(row.noise_lower)
            << "," << fmt_opt(row.ns_lower) << "," << fmt_opt(row.ns_upper) << ","
            << fmt_opt(row.m_times_nu_q) << "," << row.witnesses << "," << row.note << "\n";
    }
    return out.str();
}

Json report_summary(const Report &report) {
    Json verdicts = Json::array();
    for (const auto &v : report.verdicts) {
        verdicts.push_back(Json{{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    }
    Json row_ms = Json::array();
    for (const auto &row : report.rows) row_ms.push_back(row.wall_ms);
    return Json{{"scenario", report.scenario},
                {"verdicts", std::move(verdicts)},
                {"timing", Json{{"total_ms", report.total_wall_ms}, {"row_ms", std::move(row_ms)}}}};
}

void write_report(const Report &report, const std::string &output_base) {
    const std::filesystem::path base(output_base);
    if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
    {
        std::ofstream csv(output_base + ".csv", std::ios::binary);
        if (!csv) throw InvalidValue("cannot open " + output_base + ".csv for writing");
        csv << report_csv(report);
    }
    std::ofstream json_out(output_base + ".json", std::ios::binary);
    if (!json_out) throw InvalidValue("cannot open " + output_base + ".json for writing");
    json_out << report_summary(report).dump(2) << "\n";
}

FinitePovm classical_registration_povm(const PartitionOfUnity &p, const SphereGrid &grid) {
    const Eigen::Index dim = static_cast<Eigen::Index>(grid.n_t()) * grid.n_phi();
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(p.size()));
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        RealVector diag(dim);
        Eigen::Index node = 0;
        for (int i = 0; i < grid.n_t(); ++i) {
            for (int l = 0; l < grid.n_phi(); ++l) {
                diag(node++) = p.function(j)(grid.point(i, l));
            }
        }
        elements.push_back(HermitianMatrix::diagonal(diag));
    }
    return FinitePovm(std::move(elements));
}

std::vector<Verdict> check_suite(const std::string &suite, std::uint64_t seed) {
    std::vector<Verdict> verdicts;
    if (suite == "janssens") {
        ScenarioConfig cfg;
        cfg.scenario = "janssens-fuzz";
        cfg.seed = seed;
        return run_scenario(cfg).verdicts;
    }
    if (suite == "bt-axioms") {
        const SphereFunction one = SphereFunction::constant(1.0);
        const SphereFunction q1 = coordinate_q1();
        const SphereFunction q2 = coordinate_q2();
        const SphereFunction q3 = coordinate_q3();

        double bt1_worst = 0.0;
        double spectrum_worst = 0.0;
        for (int m : {8, 32, 128}) {
            ToeplitzContext ctx(m);
            const HermitianMatrix t_one = toeplitz(ctx, one);
            bt1_worst = std::max(
                bt1_worst,
                (t_one.mat() - ComplexMatrix::Identity(m + 1, m + 1)).cwiseAbs().maxCoeff());
            const auto decomp = spectral_decomp(toeplitz(ctx, q3));
            RealVector expected(m + 1);
            for (int k = 0; k <= m; ++k) expected(k) = static_cast<double>(m - 2 * k) / (m + 2);
            std::sort(expected.begin(), expected.end());
            spectrum_worst =
                std::max(spectrum_worst, (decomp.eigenvalues - expected).cwiseAbs().maxCoeff());
        }
        verdicts.push_back({"bt1_identity", bt1_worst <= 1e-10,
                            "max |T(1) - id| = " + fmt(bt1_worst) + " over m in {8,32,128}"});
        verdicts.push_back({"spin_spectrum", spectrum_worst <= 1e-10,
                            "max eigenvalue deviation from (m-2k)/(m+2) = " +
                                fmt(spectrum_worst)});

        double bt3_worst = 0.0;
        std::vector<double> bt5;
        for (int m : {32, 64, 128}) {
            ToeplitzContext ctx(m);
            bt3_worst = std::max(bt3_worst,
                                 std::abs(norm_defect(ctx, q3) - 2.0 / (m + 2)));
            bt5.push_back(sharpness_defect(ctx, q3));
        }
        verdicts.push_back({"bt3_exact", bt3_worst <= 1e-9,
                            "max |norm_defect(q3) - 2/(m+2)| = " + fmt(bt3_worst)});
        double halving_worst = 0.0;
        for (std::size_t i = 0; i + 1 < bt5.size(); ++i) {
            halving_worst = std::max(halving_worst, std::abs(bt5[i + 1] / (0.5 * bt5[i]) - 1.0));
        }
        verdicts.push_back({"bt5_halving", halving_worst <= 0.2,
                            "sharpness_defect(q3) halving deviation = " + fmt(halving_worst) +
                                " over m in {32,64,128}"});

        bool bt4_defect_ok = true;
        bool bt4_comm_ok = true;
        std::string bt4_detail;
        for (int m : {16, 64, 256}) {
            ToeplitzContext ctx(m);
            const double defect = correspondence_defect(ctx, q1, q2);
            const double scaled_comm = m * comm_norm(toeplitz(ctx, q1), toeplitz(ctx, q2));
            bt4_defect_ok = bt4_defect_ok && defect <= 8.0 / m;
            bt4_comm_ok = bt4_comm_ok && scaled_comm >= 2.0 - 10.0 / m && scaled_comm <= 2.0;
            bt4_detail += "m=" + std::to_string(m) + ": defect=" + fmt(defect) +
                          " m*comm=" + fmt(scaled_comm) + "; ";
        }
        verdicts.push_back({"bt4_defect", bt4_defect_ok, bt4_detail});
        verdicts.push_back({"bt4_commutator_window", bt4_comm_ok, bt4_detail});
        return verdicts;
    }
    if (suite == "naimark") {
        double isometry_worst = 0.0;
        double projector_worst = 0.0;
        double compression_worst = 0.0;
        double identity_worst = 0.0;
        for (int c = 0; c < 200; ++c) {
            std::mt19937_64 rng(detail::mix_seed(seed ^ 0xd11a7e5ULL, static_cast<std::uint64_t>(c)));
            std::uniform_int_distribution<int> dim_pick(2, 6);
            std::uniform_int_distribution<int> n_pick(2, 5);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            const int dim = dim_pick(rng);
            const int n = n_pick(rng);
            const FinitePovm povm = random_povm(dim, n, rng());
            const NaimarkDilation dilation = naimark_dilate(povm);
            const Eigen::Index big = dilation.isometry.rows();

            isometry_worst = std::max(
                isometry_worst, (dilation.isometry.adjoint() * dilation.isometry -
                                 ComplexMatrix::Identity(dim, dim))
                                    .cwiseAbs()
                                    .maxCoeff());
            ComplexMatrix projector_sum = ComplexMatrix::Zero(big, big);
            for (int j = 0; j < n; ++j) {
                const ComplexMatrix &pj = dilation.projectors[static_cast<std::size_t>(j)].mat();
                projector_worst =
                    std::max(projector_worst, (pj * pj - pj).cwiseAbs().maxCoeff());
                projector_sum += pj;
                for (int i = 0; i < j; ++i) {
                    projector_worst = std::max(
                        projector_worst,
                        (dilation.projectors[static_cast<std::size_t>(i)].mat() * pj)
                            .cwiseAbs()
                            .maxCoeff());
                }
                compression_worst = std::max(
                    compression_worst,
                    (compress(dilation.isometry, dilation.projectors[static_cast<std::size_t>(j)])
                         .mat() -
                     povm.element(j).mat())
                        .cwiseAbs()
                        .maxCoeff());
            }
            projector_worst = std::max(
                projector_worst,
                (projector_sum - ComplexMatrix::Identity(big, big)).cwiseAbs().maxCoeff());

            for (int pair = 0; pair < 2; ++pair) {
                RealVector x(n);
                for (int j = 0; j < n; ++j) x(j) = unit(rng);
                const OutcomeVector outcome(x);
                ComplexMatrix b1 = ComplexMatrix::Zero(big, big);
                for (int j = 0; j < n; ++j) {
                    b1 += x(j) * dilation.projectors[static_cast<std::size_t>(j)].mat();
                }
                const HermitianMatrix b1_herm(b1);
                const ComplexMatrix psi_b1 = compress(dilation.isometry, b1_herm).mat();
                const ComplexMatrix psi_b1_sq =
                    compress(dilation.isometry, HermitianMatrix(b1 * b1)).mat();
                identity_worst =
                    std::max(identity_worst, (psi_b1 - contract(povm, outcome).mat())
                                                 .cwiseAbs()
                                                 .maxCoeff());
                identity_worst = std::max(
                    identity_worst, (psi_b1_sq - psi_b1 * psi_b1 -
                                     noise_operator(povm, outcome).mat())
                                        .cwiseAbs()
                                        .maxCoeff());
            }
        }
        verdicts.push_back({"isometry", isometry_worst <= 1e-10,
                            "max |V*V - id| = " + fmt(isometry_worst)});
        verdicts.push_back({"projectors", projector_worst <= 1e-10,
                            "max projector defect (idempotency/orthogonality/sum) = " +
                                fmt(projector_worst)});
        verdicts.push_back({"compression", compression_worst <= 1e-9,
                            "max |V* P_j V - A_j| = " + fmt(compression_worst)});
        verdicts.push_back({"noise_identity", identity_worst <= 1e-9,
                            "max deviation of Psi(B1^2)-Psi(B1)^2 from Delta(x) = " +
                                fmt(identity_worst)});
        return verdicts;
    }
    throw InvalidValue("unknown check suite '" + suite + "' (janssens, bt-axioms, naimark)");
}

} // namespace povmlab
