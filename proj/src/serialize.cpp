#include "povmlab/serialize.hpp"

#include <cstdio>
#include <ostream>

namespace povmlab {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Json matrix_to_json(const HermitianMatrix &a) {
    const Eigen::Index d = a.dim();
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            re.push_back(a.mat()(r, c).real());
            im.push_back(a.mat()(r, c).imag());
        }
    }
    return Json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianMatrix matrix_from_json(const Json &j) {
    const auto d = j.at("dim").get<Eigen::Index>();
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (static_cast<Eigen::Index>(re.size()) != d * d ||
        static_cast<Eigen::Index>(im.size()) != d * d) {
        throw InvalidValue("matrix_from_json: entry count does not match dim");
    }
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto idx = static_cast<std::size_t>(r * d + c);
            m(r, c) = Complex(re[idx].get<double>(), im[idx].get<double>());
        }
    }
    return HermitianMatrix(std::move(m));
}

Json povm_to_json(const FinitePovm &a) {
    Json elements = Json::array();
    for (const auto &e : a.elements()) elements.push_back(matrix_to_json(e));
    return Json{{"dim", a.dim()}, {"N", a.outcomes()}, {"elements", std::move(elements)}};
}

FinitePovm povm_from_json(const Json &j) {
    std::vector<HermitianMatrix> elements;
    for (const auto &e : j.at("elements")) elements.push_back(matrix_from_json(e));
    FinitePovm povm(std::move(elements));
    if (j.contains("dim") && povm.dim() != j.at("dim").get<Eigen::Index>()) {
        throw InvalidValue("povm_from_json: dim field disagrees with elements");
    }
    if (j.contains("N") && povm.outcomes() != j.at("N").get<Eigen::Index>()) {
        throw InvalidValue("povm_from_json: N field disagrees with elements");
    }
    return povm;
}

Json kernel_to_json(const MarkovKernel &k) {
    Json rows = Json::array();
    for (Eigen::Index w = 0; w < k.source_size(); ++w) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < k.target_size(); ++j) row.push_back(k(w, j));
        rows.push_back(std::move(row));
    }
    return Json{{"L", k.source_size()}, {"N", k.target_size()}, {"rows", std::move(rows)}};
}

MarkovKernel kernel_from_json(const Json &j) {
    const auto rows = j.at("rows");
    const auto l = static_cast<Eigen::Index>(rows.size());
    if (l == 0) throw InvalidValue("kernel_from_json: empty rows");
    const auto n = static_cast<Eigen::Index>(rows[0].size());
    Eigen::MatrixXd gamma(l, n);
    for (Eigen::Index w = 0; w < l; ++w) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(w)].size()) != n) {
            throw InvalidValue("kernel_from_json: ragged rows");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            gamma(w, c) = rows[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)].get<double>();
        }
    }
    return MarkovKernel(std::move(gamma));
}

void write_partition_csv(const PartitionOfUnity &p, const SphereGrid &grid, std::ostream &out) {
    out << "t,phi";
    for (Eigen::Index j = 0; j < p.size(); ++j) out << ",f_" << (j + 1);
    out << "\n";
    for (int i = 0; i < grid.n_t(); ++i) {
        for (int l = 0; l < grid.n_phi(); ++l) {
            const SpherePoint pt = grid.point(i, l);
            out << format_double(pt.t) << "," << format_double(pt.phi);
            for (Eigen::Index j = 0; j < p.size(); ++j) {
                out << "," << format_double(p.function(j)(pt));
            }
            out << "\n";
        }
    }
}

} // namespace povmlab
