#include "gaborlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gaborlab/errors.hpp"
#include "gaborlab/oracle.hpp"
#include "gaborlab/rng.hpp"

namespace gaborlab {

using nlohmann::json;

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "bounds",   "zz",       "walnut",   "janssen",         "figa",      "wexler_raz",
        "duality",  "calderon", "critical", "bessel_estimate", "dual_pair"};
    return names;
}

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
    throw InvalidInput("config: " + path + ": " + message);
}

const json& require_field(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object()) config_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) config_error(path + "." + key, "missing required field");
    return *it;
}

std::vector<Index> parse_int_array(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.empty()) config_error(path, "expected a non-empty array of integers");
    std::vector<Index> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& v = arr[i];
        if (!v.is_number_integer())
            config_error(path + "[" + std::to_string(i) + "]", "expected an integer");
        out.push_back(v.get<Index>());
    }
    return out;
}

std::vector<std::vector<Index>> parse_generators(const json& node, const std::string& path,
                                                 std::size_t arity) {
    const json& gens = require_field(node, path, "generators");
    if (!gens.is_array()) config_error(path + ".generators", "expected an array of tuples");
    std::vector<std::vector<Index>> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string gpath = path + ".generators[" + std::to_string(i) + "]";
        if (!gens[i].is_array()) config_error(gpath, "expected a coordinate tuple");
        std::vector<Index> tuple;
        for (std::size_t j = 0; j < gens[i].size(); ++j) {
            if (!gens[i][j].is_number_integer())
                config_error(gpath + "[" + std::to_string(j) + "]", "expected an integer");
            tuple.push_back(gens[i][j].get<Index>());
        }
        if (tuple.size() != arity) config_error(gpath, "tuple arity must match the group");
        out.push_back(std::move(tuple));
    }
    return out;
}

std::vector<double> parse_real_array(const json& arr, const std::string& path) {
    if (!arr.is_array()) config_error(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) config_error(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(arr[i].get<double>());
    }
    return out;
}

WindowSpec parse_window(const json& node, const std::string& path, Index group_order) {
    if (!node.is_object()) config_error(path, "expected an object");
    WindowSpec spec;
    const json& kind = require_field(node, path, "kind");
    if (!kind.is_string()) config_error(path + ".kind", "expected a string");
    const std::string k = kind.get<std::string>();
    if (k == "explicit") {
        spec.kind = WindowSpec::Kind::Explicit;
        spec.re = parse_real_array(require_field(node, path, "re"), path + ".re");
        if (node.contains("im")) spec.im = parse_real_array(node["im"], path + ".im");
        else spec.im.assign(spec.re.size(), 0.0);
        if (static_cast<Index>(spec.re.size()) != group_order)
            config_error(path + ".re", "window values length must equal group order");
        if (static_cast<Index>(spec.im.size()) != group_order)
            config_error(path + ".im", "window values length must equal group order");
    } else if (k == "delta") {
        spec.kind = WindowSpec::Kind::Delta;
    } else if (k == "constant") {
        spec.kind = WindowSpec::Kind::Constant;
    } else if (k == "random") {
        spec.kind = WindowSpec::Kind::Random;
        if (node.contains("seed")) {
            if (!node["seed"].is_number_unsigned() && !node["seed"].is_number_integer())
                config_error(path + ".seed", "expected an integer seed");
            spec.seed = node["seed"].get<std::uint64_t>();
        }
    } else if (k == "bspline") {
        spec.kind = WindowSpec::Kind::Bspline;
        const json& order = require_field(node, path, "order");
        if (!order.is_number_integer() || order.get<int>() < 1)
            config_error(path + ".order", "expected a positive integer");
        spec.order = order.get<std::size_t>();
        if (node.contains("factors")) {
            const json& factors = node["factors"];
            if (!factors.is_array()) config_error(path + ".factors", "expected an array of arrays");
            for (std::size_t i = 0; i < factors.size(); ++i)
                spec.factors.push_back(
                    parse_real_array(factors[i], path + ".factors[" + std::to_string(i) + "]"));
            if (spec.factors.size() != spec.order)
                config_error(path + ".factors", "need exactly `order` factor arrays");
        }
    } else {
        config_error(path + ".kind",
                     "unknown window kind (expected explicit|delta|constant|random|bspline)");
    }
    return spec;
}

json window_echo(const WindowSpec& spec) {
    json w;
    switch (spec.kind) {
        case WindowSpec::Kind::Explicit:
            w["kind"] = "explicit";
            w["re"] = spec.re;
            w["im"] = spec.im;
            break;
        case WindowSpec::Kind::Delta: w["kind"] = "delta"; break;
        case WindowSpec::Kind::Constant: w["kind"] = "constant"; break;
        case WindowSpec::Kind::Random:
            w["kind"] = "random";
            w["seed"] = spec.seed;
            break;
        case WindowSpec::Kind::Bspline:
            w["kind"] = "bspline";
            w["order"] = spec.order;
            if (!spec.factors.empty()) w["factors"] = spec.factors;
            break;
    }
    return w;
}

json bounds_json(const FrameBounds& fb) {
    return json{{"A", fb.A_opt}, {"B", fb.B_opt}, {"is_frame", fb.is_frame}};
}

json field_json(const SpectralField& field) {
    json fibers = json::array();
    for (const auto& f : field.fibers)
        fibers.push_back(json{{"x", f.x_rep}, {"omega", f.omega_rep}, {"values", f.values}});
    return json{{"fibers", fibers},
                {"global_min", field.global_min},
                {"global_max", field.global_max},
                {"min_nonzero", field.min_nonzero},
                {"deficient_fibers", field.deficient_fiber_count}};
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("config: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) config_error("$", "top level must be an object");

    static const std::vector<std::string> allowed = {
        "group",  "lambda",    "gamma",     "window",    "dual_window",
        "checks", "tolerance", "max_order", "dump_spectral_field"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            config_error(it.key(), "unexpected field");

    ScenarioConfig cfg;
    cfg.group_factors = parse_int_array(require_field(doc, "$", "group"), "group");
    for (std::size_t i = 0; i < cfg.group_factors.size(); ++i)
        if (cfg.group_factors[i] < 1)
            config_error("group[" + std::to_string(i) + "]", "factors must be >= 1");
    Index order = 1;
    for (Index n : cfg.group_factors) order *= n;

    cfg.lambda_generators =
        parse_generators(require_field(doc, "$", "lambda"), "lambda", cfg.group_factors.size());
    cfg.gamma_generators =
        parse_generators(require_field(doc, "$", "gamma"), "gamma", cfg.group_factors.size());
    cfg.window = parse_window(require_field(doc, "$", "window"), "window", order);
    if (doc.contains("dual_window"))
        cfg.dual_window = parse_window(doc["dual_window"], "dual_window", order);

    if (doc.contains("checks")) {
        const json& checks = doc["checks"];
        if (!checks.is_array()) config_error("checks", "expected an array of check names");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            if (!checks[i].is_string())
                config_error("checks[" + std::to_string(i) + "]", "expected a string");
            const std::string name = checks[i].get<std::string>();
            if (std::find(known_checks().begin(), known_checks().end(), name) ==
                known_checks().end())
                config_error("checks[" + std::to_string(i) + "]", "unknown check '" + name + "'");
            cfg.checks.push_back(name);
        }
    }
    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number() || doc["tolerance"].get<double>() <= 0.0)
            config_error("tolerance", "expected a positive number");
        cfg.tolerance = doc["tolerance"].get<double>();
    }
    if (doc.contains("max_order")) {
        if (!doc["max_order"].is_number_integer() || doc["max_order"].get<Index>() < 1)
            config_error("max_order", "expected a positive integer");
        cfg.max_order = doc["max_order"].get<Index>();
    }
    if (doc.contains("dump_spectral_field")) {
        if (!doc["dump_spectral_field"].is_boolean())
            config_error("dump_spectral_field", "expected a boolean");
        cfg.dump_spectral_field = doc["dump_spectral_field"].get<bool>();
    }

    json echo;
    echo["group"] = cfg.group_factors;
    echo["lambda"] = json{{"generators", cfg.lambda_generators}};
    echo["gamma"] = json{{"generators", cfg.gamma_generators}};
    echo["window"] = window_echo(cfg.window);
    if (cfg.dual_window) echo["dual_window"] = window_echo(*cfg.dual_window);
    echo["checks"] = cfg.checks.empty() ? known_checks() : cfg.checks;
    echo["tolerance"] = cfg.tolerance;
    echo["max_order"] = cfg.max_order;
    echo["dump_spectral_field"] = cfg.dump_spectral_field;
    cfg.echo = std::move(echo);
    return cfg;
}

Signal realize_window(const WindowSpec& spec, const FiniteAbelianGroup& g,
                      const Subgroup& lambda) {
    switch (spec.kind) {
        case WindowSpec::Kind::Explicit: {
            Signal f = zero_signal(g);
            for (Index x = 0; x < g.order; ++x)
                f[x] = Complex{spec.re[static_cast<std::size_t>(x)],
                               spec.im[static_cast<std::size_t>(x)]};
            validate_signal(f);
            return f;
        }
        case WindowSpec::Kind::Delta: return delta_signal(g);
        case WindowSpec::Kind::Constant: return constant_signal(g);
        case WindowSpec::Kind::Random:
            return Signal{g, random_complex_values(spec.seed, static_cast<std::size_t>(g.order))};
        case WindowSpec::Kind::Bspline: {
            std::vector<std::vector<double>> factors = spec.factors;
            if (factors.empty()) {
                const Transversal x_reps = transversal(g, lambda);
                factors.assign(spec.order, std::vector<double>(x_reps.reps.size(), 1.0));
            }
            return build_parseval_bspline(g, lambda, spec.order, factors);
        }
    }
    throw InvalidInput("window: unknown kind");
}

ReportDocument run_scenario(const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();

    // Setup errors (bad group, generators, windows) propagate to the caller as
    // the invalid-input class; per-check numeric failures become fail statuses.
    const FiniteAbelianGroup group = make_group(cfg.group_factors, cfg.max_order);
    std::vector<GroupElement> lgens, ggens;
    for (const auto& t : cfg.lambda_generators) lgens.push_back(GroupElement{t});
    for (const auto& t : cfg.gamma_generators) ggens.push_back(GroupElement{t});
    const Subgroup lambda = subgroup_from_generators(group, lgens);
    const Subgroup gamma = subgroup_from_generators(dual_group(group), ggens);
    const Signal window = realize_window(cfg.window, group, lambda);
    const GaborSystem sys = make_gabor_system(window, lambda, gamma);

    std::optional<Signal> dual;
    if (cfg.dual_window) dual = realize_window(*cfg.dual_window, group, lambda);

    ReportDocument doc;
    doc.scenario = cfg.echo;
    doc.tolerance = cfg.tolerance;

    const std::vector<std::string> requested = cfg.checks.empty() ? known_checks() : cfg.checks;
    const double tol = cfg.tolerance;

    DualityReport rep;
    SpectralBounds gramian, zibulski;
    bool analysis_ok = true;
    std::string analysis_error;
    try {
        rep = duality_report(sys, tol);
        gramian = dual_gramian_bounds(sys, tol);
        zibulski = zz_bounds(sys, tol);
    } catch (const std::exception& e) {
        analysis_ok = false;
        analysis_error = e.what();
    }

    if (analysis_ok) {
        doc.bounds = json{{"oracle", bounds_json(rep.oracle_bounds)},
                          {"dual_gramian", bounds_json(rep.gramian_bounds)},
                          {"zz", bounds_json(rep.zz)},
                          {"frequency", bounds_json(rep.frequency_bounds)},
                          {"adjoint_riesz", bounds_json(rep.adjoint_riesz_bounds)},
                          {"p", gramian.p},
                          {"q", gramian.q}};
        doc.flags = json{{"is_frame", rep.is_frame},
                         {"is_parseval", rep.is_parseval},
                         {"is_tight", rep.is_tight},
                         {"adjoint_orthogonal", rep.adjoint_orthogonal},
                         {"tight_iff_orthogonal", rep.tight_iff_orthogonal},
                         {"consistent", rep.consistent}};
        doc.residuals = json{{"five_way_deviation", rep.five_way_deviation},
                             {"walnut", rep.walnut_residual},
                             {"janssen", rep.janssen_residual},
                             {"figa", rep.figa_residual},
                             {"wexler_raz", rep.wexler_raz_residual},
                             {"dual_pair", rep.dual_pair_residual},
                             {"bessel_duality_gap", rep.bessel_duality_gap},
                             {"condition_A", rep.condition_A},
                             {"bessel_estimate", rep.bessel_estimate_value}};
        doc.calderon = json{{"time", json::array({rep.calderon.time_min, rep.calderon.time_max})},
                            {"frequency",
                             json::array({rep.calderon.freq_min, rep.calderon.freq_max})}};
        if (cfg.dump_spectral_field)
            doc.spectral =
                json{{"dual_gramian", field_json(gramian.field)}, {"zz", field_json(zibulski.field)}};
    }

    const double op_tol = analysis_ok ? tol * std::max(1.0, rep.oracle_bounds.B_opt) : tol;
    for (const std::string& name : requested) {
        CheckResult result;
        result.name = name;
        if (!analysis_ok) {
            result.status = "fail";
            result.detail = json{{"error", analysis_error}};
            doc.checks.push_back(std::move(result));
            continue;
        }
        try {
            if (name == "bounds") {
                result.status = rep.five_way_deviation <= tol ? "pass" : "fail";
                result.detail = json{{"five_way_deviation", rep.five_way_deviation}};
            } else if (name == "zz") {
                double fiber_dev = 0.0;
                for (std::size_t k = 0; k < gramian.field.fibers.size(); ++k) {
                    const auto& ev = gramian.field.fibers[k].values;
                    const auto& sv = zibulski.field.fibers[k].values;
                    for (std::size_t i = 0; i < ev.size(); ++i)
                        fiber_dev = std::max(fiber_dev, std::abs(ev[i] - sv[i]));
                }
                const double bound_dev =
                    std::max(std::abs(gramian.bounds.A_opt - zibulski.bounds.A_opt),
                             std::abs(gramian.bounds.B_opt - zibulski.bounds.B_opt));
                result.status = fiber_dev <= op_tol && bound_dev <= op_tol ? "pass" : "fail";
                result.detail = json{{"per_fiber_deviation", fiber_dev},
                                     {"bound_deviation", bound_dev},
                                     {"p", zibulski.p},
                                     {"q", zibulski.q}};
            } else if (name == "walnut") {
                result.status = rep.walnut_residual <= op_tol ? "pass" : "fail";
                result.detail = json{{"residual", rep.walnut_residual}};
            } else if (name == "janssen") {
                result.status = rep.janssen_residual <= op_tol ? "pass" : "fail";
                result.detail =
                    json{{"residual", rep.janssen_residual}, {"condition_A", rep.condition_A}};
            } else if (name == "figa") {
                result.status = rep.figa_residual <= op_tol ? "pass" : "fail";
                result.detail = json{{"residual", rep.figa_residual}};
            } else if (name == "wexler_raz") {
                if (!rep.is_frame) {
                    result.status = "skip";
                    result.detail = json{{"reason", "not a frame; no canonical dual"}};
                } else {
                    result.status = rep.wexler_raz_residual <= tol ? "pass" : "fail";
                    result.detail = json{{"residual", rep.wexler_raz_residual},
                                         {"dual_pair_residual", rep.dual_pair_residual}};
                }
            } else if (name == "duality") {
                const double da =
                    std::abs(rep.oracle_bounds.A_opt - rep.adjoint_riesz_bounds.A_opt);
                const double db =
                    std::abs(rep.oracle_bounds.B_opt - rep.adjoint_riesz_bounds.B_opt);
                const double lim = tol * std::max(1.0, rep.oracle_bounds.B_opt);
                result.status =
                    (da <= lim && db <= lim && rep.bessel_duality_gap <= lim) ? "pass" : "fail";
                result.detail = json{{"A_gap", da},
                                     {"B_gap", db},
                                     {"bessel_duality_gap", rep.bessel_duality_gap}};
            } else if (name == "calderon") {
                result.status = rep.calderon_ok ? "pass" : "fail";
                result.detail = doc.calderon;
            } else if (name == "critical") {
                if (sys.lambda.element_indices != sys.gamma_perp.element_indices) {
                    result.status = "skip";
                    result.detail = json{{"reason", "Lambda != Gamma-perp"}};
                } else {
                    const CriticalDensityReport cd = critical_density_check(sys, tol);
                    const double lim = tol * std::max(1.0, cd.bounds.B_opt);
                    const bool ok = (cd.is_frame == cd.is_riesz_basis) && cd.frame_riesz_gap <= lim;
                    result.status = ok ? "pass" : "fail";
                    result.detail = json{{"is_frame", cd.is_frame},
                                         {"is_riesz_basis", cd.is_riesz_basis},
                                         {"bound_gap", cd.frame_riesz_gap},
                                         {"zero_fibers", cd.zero_fiber_count},
                                         {"zak_sq_min_nonzero", cd.zak_abs_sq_min_nonzero},
                                         {"zak_sq_max", cd.zak_abs_sq_max}};
                }
            } else if (name == "bessel_estimate") {
                result.status = rep.bessel_estimate_ok ? "pass" : "fail";
                result.detail = json{{"M", rep.bessel_estimate_value},
                                     {"lambda_max", rep.oracle_bounds.B_opt}};
            } else if (name == "dual_pair") {
                if (!dual) {
                    result.status = "skip";
                    result.detail = json{{"reason", "no dual_window in config"}};
                } else {
                    const DualPairResiduals res = verify_dual_pair(sys, *dual);
                    const double wr = wexler_raz_residual(sys, *dual);
                    result.status = (res.max() <= tol && wr <= tol) ? "pass" : "fail";
                    result.detail = json{{"weak_duality", res.weak_duality},
                                         {"s_side", res.s_side},
                                         {"t_side", res.t_side},
                                         {"wexler_raz", wr}};
                }
            } else {
                result.status = "fail";
                result.detail = json{{"error", "unknown check"}};
            }
        } catch (const std::exception& e) {
            result.status = "fail";
            result.detail = json{{"error", e.what()}};
        }
        doc.checks.push_back(std::move(result));
    }

    for (const CheckResult& c : doc.checks)
        if (c.status == "fail") doc.all_passed = false;

    doc.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
    return doc;
}

json ReportDocument::to_json() const {
    json doc;
    doc["schema_version"] = schema_version;
    doc["scenario"] = scenario;
    doc["tolerance"] = tolerance;
    doc["bounds"] = bounds.is_null() ? json::object() : bounds;
    doc["flags"] = flags.is_null() ? json::object() : flags;
    doc["residuals"] = residuals.is_null() ? json::object() : residuals;
    doc["calderon"] = calderon.is_null() ? json::object() : calderon;
    if (!spectral.is_null()) doc["spectral"] = spectral;
    json checks_json = json::array();
    for (const CheckResult& c : checks)
        checks_json.push_back(json{{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    doc["checks"] = checks_json;
    doc["all_passed"] = all_passed;
    // Wall-clock timing is intentionally omitted: identical config + seed must
    // produce byte-identical JSON.
    return doc;
}

std::string ReportDocument::to_text() const {
    std::ostringstream os;
    os << "gaborlab report (schema " << schema_version << ")\n";
    os << "scenario: group=" << scenario["group"].dump()
       << " tolerance=" << tolerance << "\n\n";
    if (!bounds.is_null() && bounds.contains("oracle")) {
        os << "frame bounds (A, B) by method:\n";
        const char* methods[] = {"oracle", "dual_gramian", "zz", "frequency", "adjoint_riesz"};
        os << "  " << std::left;
        for (const char* m : methods) {
            const json& b = bounds[m];
            os << m << "=(" << b["A"].dump() << ", " << b["B"].dump() << ") ";
        }
        os << "\n  p=" << bounds["p"].dump() << " q=" << bounds["q"].dump() << "\n\n";
    }
    os << "checks:\n";
    for (const CheckResult& c : checks) {
        os << "  [" << c.status << "] " << c.name;
        if (c.status != "pass" && !c.detail.is_null()) os << "  " << c.detail.dump();
        os << "\n";
    }
    os << "\nall_passed: " << (all_passed ? "true" : "false") << "\n";
    os << "elapsed_ms: " << timing_ms << "\n";
    return os.str();
}

void emit_report(const ReportDocument& doc, const std::string& format, const std::string& path) {
    std::string payload;
    if (format == "json")
        payload = doc.to_json().dump(2) + "\n";
    else if (format == "text")
        payload = doc.to_text();
    else
        throw InvalidInput("emit_report: unknown format '" + format + "'");

    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_report: cannot open '" + path + "' for writing");
    out << payload;
    if (!out.good()) throw IoError("emit_report: write to '" + path + "' failed");
}

bool validate_report_json(const json& doc, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    if (!doc.is_object()) return fail("report must be an object");
    for (const char* key : {"schema_version", "scenario", "tolerance", "bounds", "flags",
                            "residuals", "calderon", "checks", "all_passed"})
        if (!doc.contains(key)) return fail(std::string("missing field '") + key + "'");
    if (!doc["schema_version"].is_string()) return fail("schema_version must be a string");
    if (!doc["checks"].is_array()) return fail("checks must be an array");
    for (const json& c : doc["checks"]) {
        if (!c.is_object() || !c.contains("name") || !c.contains("status"))
            return fail("each check needs name and status");
        const std::string status = c["status"].get<std::string>();
        if (status != "pass" && status != "fail" && status != "skip")
            return fail("check status must be pass|fail|skip");
    }
    if (!doc["all_passed"].is_boolean()) return fail("all_passed must be a boolean");
    return true;
}

std::string scan_csv(const std::vector<Index>& group_factors, std::size_t max_subgroups,
                     std::uint64_t window_seed, Index max_order) {
    const FiniteAbelianGroup group = make_group(group_factors, max_order);
    const std::vector<Subgroup> subgroups = enumerate_subgroups(group, max_subgroups);
    const Signal window{group,
                        random_complex_values(window_seed, static_cast<std::size_t>(group.order))};

    std::ostringstream os;
    os << "lambda_order,gamma_order,p,q,A,B,is_frame\n";
    os.precision(15);
    for (const Subgroup& lambda : subgroups) {
        for (const Subgroup& gamma : subgroups) {
            const GaborSystem sys = make_gabor_system(window, lambda, gamma);
            const SpectralBounds sb = dual_gramian_bounds(sys);
            os << lambda.order << "," << gamma.order << "," << sb.p << "," << sb.q << ","
               << sb.bounds.A_opt << "," << sb.bounds.B_opt << ","
               << (sb.bounds.is_frame ? 1 : 0) << "\n";
        }
    }
    return os.str();
}

} // namespace gaborlab
