#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaborlab/errors.hpp"
#include "gaborlab/gabor.hpp"
#include "gaborlab/scenario.hpp"

namespace {

constexpr int kExitAllPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gaborlab::IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gaborlab::Index env_max_order(gaborlab::Index fallback) {
    const char* env = std::getenv("GABORLAB_MAX_ORDER");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        return static_cast<gaborlab::Index>(std::stoll(env));
    } catch (const std::exception&) {
        throw gaborlab::InvalidInput("GABORLAB_MAX_ORDER: not an integer");
    }
}

gaborlab::ScenarioConfig load_config(const std::string& path, double tolerance_override) {
    gaborlab::ScenarioConfig cfg = gaborlab::parse_config(read_file(path));
    cfg.max_order = env_max_order(cfg.max_order);
    if (tolerance_override > 0.0) {
        cfg.tolerance = tolerance_override;
        cfg.echo["tolerance"] = tolerance_override;
    }
    return cfg;
}

int run_analysis(const std::string& config_path, const std::string& json_out,
                 double tolerance_override, const std::vector<std::string>& only_checks) {
    gaborlab::ScenarioConfig cfg = load_config(config_path, tolerance_override);
    if (!only_checks.empty()) {
        for (const std::string& name : only_checks)
            if (std::find(gaborlab::known_checks().begin(), gaborlab::known_checks().end(),
                          name) == gaborlab::known_checks().end())
                throw gaborlab::InvalidInput("--check: unknown check '" + name + "'");
        cfg.checks = only_checks;
        cfg.echo["checks"] = only_checks;
    }
    const gaborlab::ReportDocument doc = gaborlab::run_scenario(cfg);
    gaborlab::emit_report(doc, "text", "");
    if (!json_out.empty()) gaborlab::emit_report(doc, "json", json_out);
    return doc.all_passed ? kExitAllPass : kExitCheckFailed;
}

int run_dual(const std::string& config_path, const std::string& json_out) {
    const gaborlab::ScenarioConfig cfg = load_config(config_path, 0.0);
    const gaborlab::FiniteAbelianGroup group =
        gaborlab::make_group(cfg.group_factors, cfg.max_order);
    std::vector<gaborlab::GroupElement> lgens, ggens;
    for (const auto& t : cfg.lambda_generators) lgens.push_back(gaborlab::GroupElement{t});
    for (const auto& t : cfg.gamma_generators) ggens.push_back(gaborlab::GroupElement{t});
    const gaborlab::Subgroup lambda = gaborlab::subgroup_from_generators(group, lgens);
    const gaborlab::Subgroup gamma =
        gaborlab::subgroup_from_generators(gaborlab::dual_group(group), ggens);
    const gaborlab::Signal window = gaborlab::realize_window(cfg.window, group, lambda);
    const gaborlab::GaborSystem sys = gaborlab::make_gabor_system(window, lambda, gamma);

    gaborlab::Signal dual = gaborlab::zero_signal(group);
    try {
        dual = gaborlab::canonical_dual(sys, cfg.tolerance);
    } catch (const gaborlab::SingularOperator& e) {
        std::cerr << "dual: not a frame (smallest eigenvalue " << e.lambda_min << ")\n";
        return kExitCheckFailed;
    }

    nlohmann::json out;
    out["group"] = cfg.group_factors;
    std::vector<double> re, im;
    for (const gaborlab::Complex& z : dual.values) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    out["window"] = nlohmann::json{{"kind", "explicit"}, {"re", re}, {"im", im}};
    const std::string payload = out.dump(2) + "\n";
    if (json_out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(json_out, std::ios::binary);
        if (!f) throw gaborlab::IoError("cannot open '" + json_out + "' for writing");
        f << payload;
    }
    return kExitAllPass;
}

int run_scan(const std::string& group_spec, std::size_t max_subgroups, std::uint64_t seed,
             const std::string& csv_out) {
    std::vector<gaborlab::Index> factors;
    std::stringstream ss(group_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            factors.push_back(static_cast<gaborlab::Index>(std::stoll(tok)));
        } catch (const std::exception&) {
            throw gaborlab::InvalidInput("--group: expected comma-separated integers");
        }
    }
    const std::string csv = gaborlab::scan_csv(factors, max_subgroups, seed,
                                               env_max_order(gaborlab::kDefaultMaxOrder));
    if (csv_out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(csv_out, std::ios::binary);
        if (!f) throw gaborlab::IoError("cannot open '" + csv_out + "' for writing");
        f << csv;
    }
    return kExitAllPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor frame analysis on finite abelian groups"};
    app.require_subcommand(1);

    std::string config_path, json_out, csv_out, group_spec;
    double tolerance = 0.0;
    std::vector<std::string> checks;
    std::size_t max_subgroups = 4096;
    std::uint64_t seed = 1;

    CLI::App* analyze = app.add_subcommand("analyze", "run all configured checks");
    analyze->add_option("--config", config_path, "scenario config (JSON)")->required();
    analyze->add_option("--json-out", json_out, "write the JSON report here");
    analyze->add_option("--tolerance", tolerance, "override the config tolerance");

    CLI::App* verify = app.add_subcommand("verify", "run selected checks");
    verify->add_option("--config", config_path, "scenario config (JSON)")->required();
    verify->add_option("--check", checks, "check name (repeatable)")->required();
    verify->add_option("--json-out", json_out, "write the JSON report here");
    verify->add_option("--tolerance", tolerance, "override the config tolerance");

    CLI::App* dual = app.add_subcommand("dual", "emit the canonical dual window");
    dual->add_option("--config", config_path, "scenario config (JSON)")->required();
    dual->add_option("--json-out", json_out, "write the dual window here");

    CLI::App* scan = app.add_subcommand("scan", "scan all subgroup pairs of a group");
    scan->add_option("--group", group_spec, "invariant factors, e.g. \"2,4\"")->required();
    scan->add_option("--max-subgroups", max_subgroups, "cap on enumerated subgroups");
    scan->add_option("--seed", seed, "window seed for the scan");
    scan->add_option("--csv-out", csv_out, "write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitAllPass : kExitInvalidInput;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analysis(config_path, json_out, tolerance, {});
        if (app.got_subcommand(verify)) return run_analysis(config_path, json_out, tolerance, checks);
        if (app.got_subcommand(dual)) return run_dual(config_path, json_out);
        if (app.got_subcommand(scan)) return run_scan(group_spec, max_subgroups, seed, csv_out);
    } catch (const gaborlab::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const gaborlab::ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const gaborlab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitInvalidInput;
}
