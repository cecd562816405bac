#include "ringmod/cli.hpp"

#include "ringmod/bounds.hpp"
#include "ringmod/errors.hpp"
#include "ringmod/majorant.hpp"
#include "ringmod/mapping.hpp"
#include "ringmod/modulus.hpp"
#include "ringmod/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

namespace ringmod::cli {

namespace {

constexpr std::pair<Command, std::string_view> command_names[] = {
    {Command::modulus, "modulus"},
    {Command::criterion, "criterion"},
    {Command::bounds_volume, "bounds-volume"},
    {Command::bounds_limsup, "bounds-limsup"},
    {Command::verify_extremal, "verify-extremal"},
    {Command::sweep, "sweep"},
};

// Equality-case tolerance for verify-extremal.
constexpr double equality_tolerance = 1e-9;
// Oracle agreement demanded by the modulus command.
constexpr double modulus_agreement = 1e-3;

class Params {
public:
    explicit Params(const std::map<std::string, std::string>& m) : m_(m) {}

    bool has(const std::string& key) const { return m_.count(key) > 0; }

    double real(const std::string& key) const {
        auto it = m_.find(key);
        if (it == m_.end()) throw ValidationError(key, "required parameter is missing");
        return parse_real(key, it->second);
    }
    double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

    long long integer(const std::string& key) const {
        auto it = m_.find(key);
        if (it == m_.end()) throw ValidationError(key, "required parameter is missing");
        const std::string& s = it->second;
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ValidationError(key, "expected an integer, got '" + s + "'");
        }
        return v;
    }
    long long integer(const std::string& key, long long fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    std::string text(const std::string& key) const { return m_.at(key); }

    static double parse_real(const std::string& key, const std::string& s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw ValidationError(key, "expected a finite number, got '" + s + "'");
        }
        return v;
    }

private:
    const std::map<std::string, std::string>& m_;
};

int dimension(const Params& p) {
    const auto n = p.integer("n");
    if (n < 2 || n > 64) throw ValidationError("n", "dimension must be in [2, 64]");
    return static_cast<int>(n);
}

std::size_t positive_count(const Params& p, const std::string& key, long long fallback) {
    const auto v = p.integer(key, fallback);
    if (v < 1) throw ValidationError(key, "must be >= 1");
    return static_cast<std::size_t>(v);
}

nlohmann::json header(const RunConfig& config) {
    nlohmann::json h;
    h["command"] = std::string(to_string(config.command));
    h["defaults"] = {
        {"cells", default_cells},
        {"samples", default_mean_samples},
        {"seed", default_seed},
        {"grid", {{"points", default_limsup_points}, {"r_min", default_limsup_r_min}, {"r_max", default_limsup_r_max}}},
    };
    h["parameters"] = config.params;
    return h;
}

BoundParams bound_params(const Params& p) {
    BoundParams bp{dimension(p), p.real("p"), p.real("q0", 1.0), p.real("alpha", 0.0), p.real("domain", 1.0)};
    bp.validate();
    return bp;
}

RadialMap map_for_bounds(const Params& p, const BoundParams& bp) {
    RadialMap map = [&] {
        if (p.has("profile")) {
            return radial_map_from_table(Dimension(bp.n), load_table_csv(p.text("profile")),
                                         "profile " + p.text("profile"), bp.domain_radius);
        }
        return extremal_map(ExtremalParams{bp.n, bp.p, bp.q0, bp.alpha});
    }();
    if (p.has("scale")) {
        const double s = p.real("scale");
        if (!(s > 0.0)) throw ValidationError("scale", "must be > 0");
        if (s != 1.0) map = map.scaled(s);
    }
    return map;
}

struct Grid {
    double r_min;
    double r_max;
    std::size_t points;
};

Grid bound_grid(const Params& p, const BoundParams& bp) {
    Grid g{p.real("r-min", default_limsup_r_min), p.real("r-max", default_limsup_r_max),
           positive_count(p, "grid-points", static_cast<long long>(default_limsup_points))};
    if (!(g.r_min > 0.0 && g.r_min < g.r_max)) throw ValidationError("r-min", "requires 0 < r-min < r-max");
    if (!(g.r_max < bp.domain_radius)) throw ValidationError("r-max", "must be < domain radius");
    if (g.points < 2) throw ValidationError("grid-points", "must be >= 2");
    return g;
}

std::string bound_csv(std::initializer_list<const BoundReport*> reports) {
    std::ostringstream os;
    write_csv_header(os);
    for (const auto* r : reports) write_csv_rows(os, *r);
    return os.str();
}

std::string summary_csv(const std::vector<std::pair<std::string, std::string>>& summary) {
    std::vector<std::string> keys, values;
    for (const auto& [k, v] : summary) {
        keys.push_back(k);
        values.push_back(v);
    }
    return csv_row(keys) + csv_row(values);
}

RunResult run_modulus(const RunConfig& config) {
    const Params p(config.params);
    const int n = dimension(p);
    ModulusProblem prob(RingCondenser(Dimension(n), p.real("r1"), p.real("r2")), p.real("p"));
    const auto cells = positive_count(p, "cells", static_cast<long long>(default_cells));
    VariationalOptions opts;
    opts.tol = p.real("tol", opts.tol);

    RunResult res;
    res.report = header(config);
    std::optional<double> closed;
    if (prob.p() != n) closed = ring_modulus_closed_form(prob);

    VariationalResult var;
    try {
        var = ring_modulus_variational(prob, cells, opts);
    } catch (const ConvergenceError& e) {
        var = e.best();
    }

    double rel = std::nan("");
    bool ok = var.converged;
    if (closed) {
        rel = std::abs(var.value - *closed) / *closed;
        ok = ok && rel <= modulus_agreement;
    }
    res.exit_code = ok ? exit_success : exit_bound_failure;
    res.verdict = ok ? "pass" : "fail";

    nlohmann::json& r = res.report["result"];
    r["closed_form"] = closed ? nlohmann::json(*closed) : nlohmann::json(nullptr);
    r["variational"] = var.value;
    r["relative_error"] = closed ? nlohmann::json(rel) : nlohmann::json(nullptr);
    r["tolerance"] = modulus_agreement;
    r["iterations"] = var.iterations;
    r["residual"] = var.residual;
    r["converged"] = var.converged;
    r["cells"] = cells;
    res.report["verdict"] = res.verdict;

    res.summary = {{"cells", std::to_string(cells)},
                   {"closed_form", closed ? format_double(*closed) : ""},
                   {"variational", format_double(var.value)},
                   {"relative_error", closed ? format_double(rel) : ""},
                   {"iterations", std::to_string(var.iterations)},
                   {"converged", var.converged ? "true" : "false"}};
    res.csv = summary_csv(res.summary);
    return res;
}

RunResult run_criterion(const RunConfig& config) {
    const Params p(config.params);
    const int n = dimension(p);
    ModulusProblem prob(RingCondenser(Dimension(n), p.real("r1"), p.real("r2")), p.real("p"));
    Majorant q = p.has("table") ? Majorant::radial_table(load_table_csv(p.text("table")))
                                : Majorant::power_law(p.real("q0", 1.0), p.real("alpha", 0.0));
    CriterionOptions opts;
    opts.samples = positive_count(p, "samples", static_cast<long long>(default_mean_samples));
    opts.seed = static_cast<std::uint64_t>(p.integer("seed", static_cast<long long>(default_seed)));

    RunResult res;
    res.report = header(config);
    const double value = criterion_upper_bound(prob, q, opts);
    res.verdict = "pass";
    res.report["result"] = {{"criterion_upper_bound", value}, {"majorant", p.has("table") ? "table" : "power-law"}};
    res.report["verdict"] = res.verdict;
    res.summary = {{"criterion_upper_bound", format_double(value)}};
    res.csv = summary_csv(res.summary);
    return res;
}

RunResult run_bounds(const RunConfig& config, bool volume) {
    const Params p(config.params);
    const BoundParams bp = bound_params(p);
    const RadialMap map = map_for_bounds(p, bp);
    const Grid g = bound_grid(p, bp);

    const BoundReport rep = volume ? check_volume_bound(map, bp, geometric_grid(g.r_min, g.r_max, g.points))
                                   : check_limsup_bound(map, bp, g.r_min, g.r_max, g.points);
    RunResult res;
    res.report = header(config);
    res.report["report"] = to_json(rep);
    res.exit_code = rep.passed ? exit_success : exit_bound_failure;
    res.verdict = rep.passed ? "pass" : (rep.conclusive ? "fail" : "advisory-fail");
    res.report["verdict"] = res.verdict;
    const auto worst = *std::min_element(rep.margins.begin(), rep.margins.end());
    res.summary = {{"verdict", res.verdict},
                   {volume ? "min_relative_margin" : "max_ratio", format_double(rep.observed_summary)},
                   {"min_margin", format_double(worst)}};
    if (!volume) res.summary.emplace_back("bound", format_double(rep.bound_values.front()));
    res.csv = bound_csv({&rep});
    return res;
}

RunResult run_verify_extremal(const RunConfig& config) {
    const Params p(config.params);
    const BoundParams bp = bound_params(p);
    const ExtremalParams ep{bp.n, bp.p, bp.q0, bp.alpha};
    const RadialMap f0 = extremal_map(ep);
    const Grid g = bound_grid(p, bp);

    const BoundReport vol = check_volume_bound(f0, bp, geometric_grid(g.r_min, g.r_max, g.points));
    const BoundReport lim = check_limsup_bound(f0, bp, g.r_min, g.r_max, g.points);

    double vol_dev = 0.0;
    for (std::size_t i = 0; i < vol.margins.size(); ++i) {
        vol_dev = std::max(vol_dev, std::abs(vol.margins[i]) / vol.bound_values[i]);
    }
    double lim_dev = 0.0;
    for (std::size_t i = 0; i < lim.margins.size(); ++i) {
        lim_dev = std::max(lim_dev, std::abs(lim.margins[i]) / lim.bound_values[i]);
    }

    const double r1 = p.real("r1", 0.25);
    const double r2 = p.real("r2", 0.75);
    const auto [t1, t2] = image_ring_radii(ep, r1, r2);
    const double image_modulus = ring_modulus_closed_form(ModulusProblem(RingCondenser(Dimension(bp.n), t1, t2), bp.p));
    const double criterion = criterion_upper_bound(ModulusProblem(RingCondenser(Dimension(bp.n), r1, r2), bp.p),
                                                   Majorant::power_law(bp.q0, bp.alpha));
    const double crit_dev = std::abs(image_modulus - criterion) / criterion;

    const bool ok = vol.passed && lim.passed && vol_dev <= equality_tolerance && lim_dev <= equality_tolerance &&
                    crit_dev <= equality_tolerance;

    RunResult res;
    res.report = header(config);
    res.report["volume"] = to_json(vol);
    res.report["limsup"] = to_json(lim);
    res.report["criterion"] = {{"r1", r1},
                               {"r2", r2},
                               {"image_r1", t1},
                               {"image_r2", t2},
                               {"image_ring_modulus", image_modulus},
                               {"criterion_upper_bound", criterion},
                               {"relative_deviation", crit_dev}};
    res.report["equality"] = {{"tolerance", equality_tolerance},
                              {"max_volume_relative_deviation", vol_dev},
                              {"max_limsup_relative_deviation", lim_dev},
                              {"criterion_relative_deviation", crit_dev}};
    res.exit_code = ok ? exit_success : exit_bound_failure;
    res.verdict = ok ? "pass" : "fail";
    res.report["verdict"] = res.verdict;
    res.summary = {{"max_volume_relative_deviation", format_double(vol_dev)},
                   {"max_limsup_relative_deviation", format_double(lim_dev)},
                   {"criterion_relative_deviation", format_double(crit_dev)}};
    res.csv = bound_csv({&vol, &lim});
    return res;
}

void check_keys(const RunConfig& config) {
    const auto& allowed = allowed_keys(config.command);
    for (const auto& [key, value] : config.params) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ValidationError(key, "unknown parameter for command " + std::string(to_string(config.command)));
        }
    }
}

std::filesystem::path resolve_output(const RunConfig& config) {
    if (!config.output.empty()) return config.output;
    if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) /
               (std::string(to_string(config.command)) + (config.format == Format::json ? ".json" : ".csv"));
    }
    return {};
}

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [cmd, text] : command_names) {
        if (text == name) return cmd;
    }
    return std::nullopt;
}

std::string_view to_string(Command command) {
    for (const auto& [cmd, text] : command_names) {
        if (cmd == command) return text;
    }
    return "unknown";
}

const std::vector<std::string>& allowed_keys(Command command) {
    static const std::vector<std::string> modulus = {"n", "p", "r1", "r2", "cells", "tol"};
    static const std::vector<std::string> criterion = {"n", "p", "r1", "r2", "q0", "alpha", "table", "samples", "seed"};
    static const std::vector<std::string> bounds = {"n",     "p",           "q0",      "alpha", "r-min",
                                                    "r-max", "grid-points", "profile", "scale", "domain"};
    static const std::vector<std::string> verify = {"n", "p", "q0", "alpha", "r1", "r2", "r-min", "r-max", "grid-points"};
    static const std::vector<std::string> sweep = [] {
        std::set<std::string> all{"target", "cap", "per-run-json", "threads"};
        for (const auto* list : {&modulus, &criterion, &bounds, &verify}) all.insert(list->begin(), list->end());
        return std::vector<std::string>(all.begin(), all.end());
    }();
    switch (command) {
    case Command::modulus: return modulus;
    case Command::criterion: return criterion;
    case Command::bounds_volume:
    case Command::bounds_limsup: return bounds;
    case Command::verify_extremal: return verify;
    case Command::sweep: return sweep;
    }
    return modulus;
}

RunResult execute(const RunConfig& config) {
    check_keys(config);
    switch (config.command) {
    case Command::modulus: return run_modulus(config);
    case Command::criterion: return run_criterion(config);
    case Command::bounds_volume: return run_bounds(config, true);
    case Command::bounds_limsup: return run_bounds(config, false);
    case Command::verify_extremal: return run_verify_extremal(config);
    case Command::sweep: return execute_sweep(config);
    }
    throw ValidationError("command", "unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    RunResult res;
    try {
        res = execute(config);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const ConformalExponentError& e) {
        err << "validation error: p: " << e.what() << '\n';
        return exit_validation;
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const DegenerateMajorantError& e) {
        err << "validation error: majorant: " << e.what() << '\n';
        return exit_validation;
    } catch (const InfiniteMeanError& e) {
        err << "validation error: majorant: " << e.what() << '\n';
        return exit_validation;
    }

    const std::string content = config.format == Format::json ? res.report.dump(2) + "\n" : res.csv;
    const auto path = resolve_output(config);
    if (path.empty()) {
        out << content;
    } else {
        try {
            write_file_atomically(path, content);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return exit_validation;
        }
        out << to_string(config.command) << ": " << res.verdict << " -> " << path.string() << '\n';
    }
    return res.exit_code;
}

namespace {

std::string_view command_help(Command cmd) {
    switch (cmd) {
    case Command::modulus: return "closed-form ring modulus checked against the variational oracle";
    case Command::criterion: return "upper bound on the image-ring modulus for a majorant Q";
    case Command::bounds_volume: return "check a radial map against the image-ball volume bound";
    case Command::bounds_limsup: return "check a radial map against the limsup distortion bound";
    case Command::verify_extremal: return "confirm the extremal map attains every bound";
    case Command::sweep: return "run a command over a parameter grid";
    }
    return "";
}

} // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-moduli of ring condensers and distortion bounds for ring Q-homeomorphisms"};
    app.require_subcommand(1);

    std::map<Command, std::map<std::string, std::string>> storage;
    std::map<Command, CLI::App*> subs;
    std::string output;
    std::string format = "json";
    std::vector<std::string> grids;

    for (const auto& [cmd, name] : command_names) {
        CLI::App* sub = app.add_subcommand(std::string(name), std::string(command_help(cmd)));
        subs[cmd] = sub;
        for (const auto& key : allowed_keys(cmd)) {
            sub->add_option("--" + key, storage[cmd][key]);
        }
        sub->add_option("-o,--output", output, "report path (default: $RINGMOD_OUTPUT_DIR or stdout)");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        if (cmd == Command::sweep) sub->add_option("--grid", grids, "key=v1,v2,... (repeatable)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "validation error: " << e.what() << '\n';
        return exit_validation;
    }

    RunConfig config;
    for (const auto& [cmd, sub] : subs) {
        if (!sub->parsed()) continue;
        config.command = cmd;
        for (const auto& key : allowed_keys(cmd)) {
            if (sub->count("--" + key) > 0) config.params[key] = storage[cmd][key];
        }
    }
    config.output = output;
    config.format = format == "csv" ? Format::csv : Format::json;
    config.grids = grids;
    return run(config, out, err);
}

} // namespace ringmod::cli
