#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "povmlab/scenarios.hpp"
#include "povmlab/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

povmlab::Json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw povmlab::InvalidValue("cannot read " + path);
    return povmlab::Json::parse(in);
}

// Partition specs may be given inline ({"type":...}) or as a file path.
povmlab::PartitionSpec parse_partition_arg(const std::string &arg) {
    if (!arg.empty() && arg.front() == '{') {
        return povmlab::PartitionSpec::from_json(povmlab::Json::parse(arg));
    }
    return povmlab::PartitionSpec::from_json(load_json(arg));
}

void print_verdicts(const std::vector<povmlab::Verdict> &verdicts) {
    for (const auto &v : verdicts) {
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << v.name << ": " << v.detail << "\n";
    }
}

bool all_pass(const std::vector<povmlab::Verdict> &verdicts) {
    for (const auto &v : verdicts) {
        if (!v.pass) return false;
    }
    return true;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"POVM noise and Berezin-Toeplitz quantization laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    auto *run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("config", config_path, "scenario config (JSON)")->required();

    int quantize_m = 16;
    std::string partition_arg;
    std::string out_path = "povm.json";
    auto *quantize =
        app.add_subcommand("quantize", "quantize a partition of unity into a POVM (JSON)");
    quantize->add_option("--m", quantize_m, "quantization level")->required();
    quantize->add_option("--partition", partition_arg, "partition spec (inline JSON or file)")
        ->required();
    quantize->add_option("--out", out_path, "output path");

    std::string suite;
    std::uint64_t check_seed = 1;
    auto *check = app.add_subcommand("check", "run a built-in verification suite");
    check->add_option("--suite", suite, "janssens | bt-axioms | naimark")->required();
    check->add_option("--seed", check_seed, "rng seed");

    auto *version = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (version->parsed()) {
            std::cout << "lab " << povmlab::kVersion << "\n";
            return kExitPass;
        }
        if (run->parsed()) {
            povmlab::ScenarioConfig cfg;
            try {
                cfg = povmlab::ScenarioConfig::from_json(load_json(config_path));
            } catch (const std::exception &e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitUsage;
            }
            const povmlab::Report report = povmlab::run_scenario(cfg);
            povmlab::write_report(report, cfg.output);
            print_verdicts(report.verdicts);
            std::cout << "report: " << cfg.output << ".csv, " << cfg.output << ".json\n";
            return report.all_pass() ? kExitPass : kExitFail;
        }
        if (quantize->parsed()) {
            povmlab::PartitionSpec spec;
            try {
                spec = parse_partition_arg(partition_arg);
            } catch (const std::exception &e) {
                std::cerr << "partition error: " << e.what() << "\n";
                return kExitUsage;
            }
            povmlab::ToeplitzContext ctx(quantize_m);
            const auto partition = povmlab::build_partition(spec, ctx.grid());
            const auto povm = povmlab::quantize_partition(ctx, partition);
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << out_path << "\n";
                return kExitFail;
            }
            out << povmlab::povm_to_json(povm).dump(2) << "\n";
            std::cout << "wrote " << out_path << " (dim " << povm.dim() << ", N "
                      << povm.outcomes() << ")\n";
            return kExitPass;
        }
        if (check->parsed()) {
            std::vector<povmlab::Verdict> verdicts;
            try {
                verdicts = povmlab::check_suite(suite, check_seed);
            } catch (const povmlab::InvalidValue &e) {
                std::cerr << "usage error: " << e.what() << "\n";
                return kExitUsage;
            }
            print_verdicts(verdicts);
            return all_pass(verdicts) ? kExitPass : kExitFail;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
