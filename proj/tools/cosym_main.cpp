#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cosym/catalog.hpp"
#include "cosym/errors.hpp"
#include "cosym/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumericFailure = 1;
constexpr int kExitUsage = 2;

std::map<std::string, double> parse_overrides(const std::vector<std::string>& raw) {
    std::map<std::string, double> out;
    for (const std::string& kv : raw) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw cosym::UsageError("expected --tol name=value, got '" + kv + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(kv.substr(eq + 1), &used);
        } catch (const std::exception&) {
            throw cosym::UsageError("bad tolerance value in '" + kv + "'");
        }
        if (used != kv.size() - eq - 1)
            throw cosym::UsageError("bad tolerance value in '" + kv + "'");
        out[kv.substr(0, eq)] = v;
    }
    return out;
}

cosym::ChartPoint parse_point(const std::string& raw) {
    cosym::ChartPoint x;
    std::size_t start = 0;
    while (start <= raw.size()) {
        const auto comma = raw.find(',', start);
        const std::string tok =
            raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        try {
            x.push_back(std::stod(tok, &used));
        } catch (const std::exception&) {
            throw cosym::UsageError("bad coordinate '" + tok + "' in --point");
        }
        if (used != tok.size()) throw cosym::UsageError("bad coordinate '" + tok + "' in --point");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return x;
}

int emit_report(const cosym::IdentityReport& rep, const std::string& out_path) {
    std::cout << rep.to_text();
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw cosym::UsageError("cannot open '" + out_path + "' for writing");
        f << rep.to_json_string();
    }
    return rep.overall_pass() ? kExitPass : kExitNumericFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for conformal connections on cosymplectic charts"};
    app.require_subcommand(1);
    // Keys match the flags of each verb, grouped in a [verb] section; flags win.
    app.set_config("--config", "", "config file (give it before the verb)");

    auto* list_cmd = app.add_subcommand("list", "catalog entries, suites and deformations");

    cosym::RunConfig cfg;
    std::vector<std::string> tol_raw;
    std::string out_path;
    auto* run_cmd = app.add_subcommand("run", "run one verification suite");
    run_cmd->add_option("--suite", cfg.suite, "suite id")->required();
    run_cmd->add_option("--manifold", cfg.manifold, "catalog manifold id");
    run_cmd->add_option("--p", cfg.deformation, "deformation id (default zero)");
    run_cmd->add_option("--points", cfg.points, "sample point count");
    run_cmd->add_option("--seed", cfg.seed, "sampler seed");
    run_cmd->add_option("--m", cfg.oracle_m, "theorem-oracle only: structure parameter m");
    run_cmd->add_option("--trials", cfg.oracle_trials, "theorem-oracle only: trial count");
    run_cmd->add_option("--tol", tol_raw, "per-identity tolerance override, name=value");
    run_cmd->add_option("--out", out_path, "write the structured report here");

    std::string dump_tensor_id, dump_manifold, dump_p = "zero", dump_point;
    auto* dump_cmd = app.add_subcommand("dump", "print tensor components at a point");
    dump_cmd->add_option("--tensor", dump_tensor_id, "tensor id")->required();
    dump_cmd->add_option("--manifold", dump_manifold, "catalog manifold id")->required();
    dump_cmd->add_option("--p", dump_p, "deformation id (default zero)");
    dump_cmd->add_option("--point", dump_point, "comma-separated chart coordinates")->required();

    int oracle_m = 3;
    int oracle_trials = 100;
    std::uint64_t oracle_seed = 42;
    std::string oracle_out;
    auto* oracle_cmd = app.add_subcommand("oracle", "theorem-oracle suite on synthetic data");
    oracle_cmd->add_option("--m", oracle_m, "structure parameter m (>= 3)");
    oracle_cmd->add_option("--trials", oracle_trials, "number of seeded trials");
    oracle_cmd->add_option("--seed", oracle_seed, "base seed");
    oracle_cmd->add_option("--out", oracle_out, "write the structured report here");

    try {
        app.parse(argc, argv);

        if (*list_cmd) {
            std::cout << cosym::catalog_listing();
            std::cout << "\nsuites:";
            for (const auto& s : cosym::suite_ids()) std::cout << " " << s;
            std::cout << "\ndeformations:";
            for (const auto& d : cosym::deformation_ids()) std::cout << " " << d;
            std::cout << "\ntensors:";
            for (const auto& t : cosym::dump_tensor_ids()) std::cout << " " << t;
            std::cout << "\n";
            return kExitPass;
        }
        if (*run_cmd) {
            cfg.tolerance_overrides = parse_overrides(tol_raw);
            if (cfg.suite != "theorem-oracle" && cfg.manifold.empty())
                throw cosym::UsageError("--manifold is required for suite '" + cfg.suite + "'");
            return emit_report(cosym::run_suite(cfg), out_path);
        }
        if (*dump_cmd) {
            std::cout << cosym::tensor_dump(dump_manifold, dump_p, dump_tensor_id,
                                            parse_point(dump_point));
            return kExitPass;
        }
        cosym::RunConfig ocfg;
        ocfg.suite = "theorem-oracle";
        ocfg.seed = oracle_seed;
        ocfg.oracle_m = oracle_m;
        ocfg.oracle_trials = oracle_trials;
        return emit_report(cosym::run_suite(ocfg), oracle_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    } catch (const cosym::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cosym::LookupError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cosym::ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cosym::DimensionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cosym::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericFailure;
    }
}
