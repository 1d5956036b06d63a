#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "povmlab/scenarios.hpp"
#include "povmlab/version.hpp"

namespace py = pybind11;
using namespace povmlab;

namespace {

FinitePovm povm_from_arrays(const std::vector<ComplexMatrix> &arrays) {
    std::vector<HermitianMatrix> elements;
    elements.reserve(arrays.size());
    for (const auto &a : arrays) elements.emplace_back(a);
    return FinitePovm(std::move(elements));
}

std::vector<ComplexMatrix> povm_to_arrays(const FinitePovm &povm) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(povm.outcomes()));
    for (const auto &e : povm.elements()) out.push_back(e.mat());
    return out;
}

SphereFunction wrap_callable(const std::function<double(double, double)> &f) {
    return SphereFunction([f](const SpherePoint &p) { return f(p.t, p.phi); });
}

SphereFunction named_coordinate(const std::string &name) {
    if (name == "q1") return coordinate_q1();
    if (name == "q2") return coordinate_q2();
    if (name == "q3") return coordinate_q3();
    throw InvalidValue("unknown coordinate '" + name + "' (q1, q2, q3)");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "POVM noise, smearing, and spin coherent-state quantization on the sphere";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "PovmlabError");

    py::class_<SearchBudget>(m, "SearchBudget")
        .def(py::init([](int exhaustive_cutoff, int starts, int iterations, double step,
                         std::uint64_t seed) {
                 return SearchBudget{exhaustive_cutoff, starts, iterations, step, seed};
             }),
             py::arg("exhaustive_cutoff") = 14, py::arg("starts") = 64,
             py::arg("iterations") = 200, py::arg("step") = 0.1, py::arg("seed") = 0)
        .def_readwrite("exhaustive_cutoff", &SearchBudget::exhaustive_cutoff)
        .def_readwrite("starts", &SearchBudget::starts)
        .def_readwrite("iterations", &SearchBudget::iterations)
        .def_readwrite("step", &SearchBudget::step)
        .def_readwrite("seed", &SearchBudget::seed);

    // operator-core
    m.def("op_norm", [](const ComplexMatrix &a) { return op_norm(HermitianMatrix(a)); },
          py::arg("matrix"), "Operator norm of a Hermitian matrix.");
    m.def("spectral_decomp",
          [](const ComplexMatrix &a) {
              const auto d = spectral_decomp(HermitianMatrix(a));
              return py::make_tuple(d.eigenvalues, d.eigenvectors);
          },
          py::arg("matrix"), "Eigenvalues (ascending) and orthonormal eigenvectors.");
    m.def("psd_sqrt",
          [](const ComplexMatrix &a, std::optional<double> tol) {
              const HermitianMatrix h(a);
              return (tol ? psd_sqrt(h, *tol) : psd_sqrt(h)).mat();
          },
          py::arg("matrix"), py::arg("tol") = std::nullopt);
    m.def("comm_norm",
          [](const ComplexMatrix &a, const ComplexMatrix &b) {
              return comm_norm(HermitianMatrix(a), HermitianMatrix(b));
          },
          py::arg("a"), py::arg("b"), "||AB - BA||_op.");

    // povm-core
    py::class_<FinitePovm>(m, "Povm")
        .def(py::init(&povm_from_arrays), py::arg("elements"))
        .def_property_readonly("dim", &FinitePovm::dim)
        .def_property_readonly("outcomes", &FinitePovm::outcomes)
        .def("element", [](const FinitePovm &p, Eigen::Index j) { return p.element(j).mat(); },
             py::arg("j"))
        .def("elements", &povm_to_arrays)
        .def_static("trivial", &FinitePovm::trivial, py::arg("dim"), py::arg("n"))
        .def_static("random", &random_povm, py::arg("dim"), py::arg("n"), py::arg("seed"));

    m.def("contract",
          [](const FinitePovm &a, const RealVector &x) {
              return contract(a, OutcomeVector(x)).mat();
          },
          py::arg("povm"), py::arg("x"));
    m.def("noise_operator",
          [](const FinitePovm &a, const RealVector &x) {
              return noise_operator(a, OutcomeVector(x)).mat();
          },
          py::arg("povm"), py::arg("x"));
    m.def("noise_magnitude",
          [](const FinitePovm &a, const SearchBudget &budget) {
              const auto r = noise_magnitude(a, budget);
              return py::make_tuple(r.value, r.witness.vec());
          },
          py::arg("povm"), py::arg("budget") = SearchBudget{},
          "Certified lower bound on the magnitude of noise, with its witness.");
    m.def("noncommutativity",
          [](const FinitePovm &a, const SearchBudget &budget) {
              const auto r = noncommutativity(a, budget);
              return py::make_tuple(r.value, r.witness_x.vec(), r.witness_y.vec());
          },
          py::arg("povm"), py::arg("budget") = SearchBudget{});
    m.def("janssens_residual",
          [](const FinitePovm &a, const RealVector &x, const RealVector &y) {
              return janssens_residual(a, OutcomeVector(x), OutcomeVector(y));
          },
          py::arg("povm"), py::arg("x"), py::arg("y"));
    m.def("naimark_dilate",
          [](const FinitePovm &a) {
              const auto d = naimark_dilate(a);
              std::vector<ComplexMatrix> projectors;
              projectors.reserve(d.projectors.size());
              for (const auto &p : d.projectors) projectors.push_back(p.mat());
              return py::make_tuple(d.isometry, projectors);
          },
          py::arg("povm"), "Isometry V and block projectors with V* P_j V = A_j.");

    // smearing
    py::class_<MarkovKernel>(m, "MarkovKernel")
        .def(py::init<Eigen::MatrixXd>(), py::arg("rows"))
        .def_property_readonly("source_size", &MarkovKernel::source_size)
        .def_property_readonly("target_size", &MarkovKernel::target_size)
        .def_property_readonly("gamma", [](const MarkovKernel &k) { return k.gamma(); })
        .def_static("identity", &MarkovKernel::identity, py::arg("n"))
        .def("compose", &MarkovKernel::compose, py::arg("then"));

    m.def("smear", &smear, py::arg("povm"), py::arg("kernel"));
    m.def("pushforward",
          [](const MarkovKernel &k, const RealVector &x) {
              return pushforward(k, OutcomeVector(x)).vec();
          },
          py::arg("kernel"), py::arg("x"));
    m.def("unsmear_commutative",
          [](const FinitePovm &a, std::optional<double> tol) {
              const auto u = tol ? unsmear_commutative(a, *tol) : unsmear_commutative(a);
              return py::make_tuple(u.projectors, u.kernel);
          },
          py::arg("povm"), py::arg("tol") = std::nullopt);
    m.def("systematic_noise_bracket",
          [](const FinitePovm &a, const SearchBudget &budget) {
              const auto b = systematic_noise_bracket(a, budget);
              return py::make_tuple(b.lower, b.upper);
          },
          py::arg("povm"), py::arg("budget") = SearchBudget{});

    // sphere-classical
    py::class_<SphereGrid>(m, "SphereGrid")
        .def(py::init<int, int>(), py::arg("n_t"), py::arg("n_phi"))
        .def_property_readonly("n_t", &SphereGrid::n_t)
        .def_property_readonly("n_phi", &SphereGrid::n_phi)
        .def("t", &SphereGrid::t, py::arg("i"))
        .def("phi", &SphereGrid::phi, py::arg("l"))
        .def("node_weight", &SphereGrid::node_weight, py::arg("i"))
        .def("integrate",
             [](const SphereGrid &g, const std::function<double(double, double)> &f) {
                 return g.integrate(wrap_callable(f));
             },
             py::arg("f"));

    py::class_<PartitionOfUnity>(m, "Partition")
        .def_property_readonly("size", &PartitionOfUnity::size)
        .def("value",
             [](const PartitionOfUnity &p, Eigen::Index j, double t, double phi) {
                 return p.function(j)(SpherePoint{t, phi});
             },
             py::arg("j"), py::arg("t"), py::arg("phi"))
        .def("validate", [](const PartitionOfUnity &p, const SphereGrid &grid) {
            const auto report = p.validate(grid);
            py::dict out;
            out["min_value"] = report.min_value;
            out["max_sum_defect"] = report.max_sum_defect;
            out["max_outside_support"] = report.max_outside_support;
            return out;
        });

    m.def("band_partition",
          [](int n, double overlap) { return band_partition(band_cover(n, overlap)); },
          py::arg("n"), py::arg("overlap"));
    m.def("cap_partition",
          [](const std::string &layout, double radius, const SphereGrid &grid) {
              return cap_partition(named_cap_centers(layout), radius, grid);
          },
          py::arg("layout"), py::arg("radius"), py::arg("grid"));
    m.def("nu_c",
          [](const PartitionOfUnity &p, const SphereGrid &grid, const SearchBudget &budget) {
              const auto r = nu_c(p, grid, budget);
              return py::make_tuple(r.value, r.witness_x.vec(), r.witness_y.vec(),
                                    py::make_tuple(r.point.t, r.point.phi));
          },
          py::arg("partition"), py::arg("grid"), py::arg("budget") = SearchBudget{});
    m.def("sup_norm",
          [](const std::function<double(double, double)> &f, const SphereGrid &grid) {
              return sup_norm(wrap_callable(f), grid);
          },
          py::arg("f"), py::arg("grid"));
    m.def("poisson_bracket",
          [](const std::function<double(double, double)> &f,
             const std::function<double(double, double)> &g, double t, double phi) {
              return poisson_bracket(wrap_callable(f), wrap_callable(g))(SpherePoint{t, phi});
          },
          py::arg("f"), py::arg("g"), py::arg("t"), py::arg("phi"),
          "Bracket value at one point, via finite differences.");

    // berezin-toeplitz
    py::class_<ToeplitzContext>(m, "ToeplitzContext")
        .def(py::init<int>(), py::arg("m"))
        .def(py::init<int, SphereGrid>(), py::arg("m"), py::arg("grid"))
        .def_property_readonly("level", &ToeplitzContext::level)
        .def_property_readonly("hilbert_dim", &ToeplitzContext::hilbert_dim)
        .def_property_readonly("grid", &ToeplitzContext::grid);

    m.def("toeplitz",
          [](const ToeplitzContext &ctx, const std::function<double(double, double)> &f) {
              return toeplitz(ctx, wrap_callable(f)).mat();
          },
          py::arg("ctx"), py::arg("f"));
    m.def("toeplitz_coordinate",
          [](const ToeplitzContext &ctx, const std::string &name) {
              return toeplitz(ctx, named_coordinate(name)).mat();
          },
          py::arg("ctx"), py::arg("name"));
    m.def("quantize_partition", &quantize_partition, py::arg("ctx"), py::arg("partition"));
    m.def("region_operator",
          [](const ToeplitzContext &ctx, const std::function<bool(double, double)> &indicator) {
              return region_operator(ctx, [indicator](const SpherePoint &p) {
                         return indicator(p.t, p.phi);
                     })
                  .mat();
          },
          py::arg("ctx"), py::arg("indicator"));
    m.def("correspondence_defect",
          [](const ToeplitzContext &ctx, const std::string &f, const std::string &g) {
              return correspondence_defect(ctx, named_coordinate(f), named_coordinate(g));
          },
          py::arg("ctx"), py::arg("f"), py::arg("g"));
    m.def("sharpness_defect",
          [](const ToeplitzContext &ctx, const std::string &f) {
              return sharpness_defect(ctx, named_coordinate(f));
          },
          py::arg("ctx"), py::arg("f"));
    m.def("norm_defect",
          [](const ToeplitzContext &ctx, const std::string &f) {
              return norm_defect(ctx, named_coordinate(f));
          },
          py::arg("ctx"), py::arg("f"));

    // experiments
    m.def("classical_registration_povm", &classical_registration_povm, py::arg("partition"),
          py::arg("grid"));
    m.def("run_scenario",
          [](const std::string &config_json) {
              const auto cfg = ScenarioConfig::from_json(Json::parse(config_json));
              const Report report = run_scenario(cfg);
              return py::make_tuple(report_csv(report), report_summary(report).dump(2),
                                    report.all_pass());
          },
          py::arg("config_json"),
          "Runs a scenario config (JSON string); returns (csv, summary_json, all_pass).");
    m.def("check_suite",
          [](const std::string &suite, std::uint64_t seed) {
              std::vector<py::tuple> out;
              for (const auto &v : check_suite(suite, seed)) {
                  out.push_back(py::make_tuple(v.name, v.pass, v.detail));
              }
              return out;
          },
          py::arg("suite"), py::arg("seed") = 1);
}
