#include "ringmod/cli.hpp"

#include "ringmod/bounds.hpp"
#include "ringmod/errors.hpp"
#include "ringmod/modulus.hpp"
#include "ringmod/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>
#include <thread>

namespace ringmod::cli {

namespace {

std::optional<double> as_number(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

struct GridSpec {
    std::string key;
    std::vector<std::string> values; // unresolved expressions
};

GridSpec parse_spec(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("grid", "expected key=v1,v2,... got '" + spec + "'");
    GridSpec g{trim(spec.substr(0, eq)), {}};
    std::string rest = spec.substr(eq + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        const auto comma = rest.find(',', start);
        const std::string tok = trim(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!tok.empty()) g.values.push_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (g.values.empty()) throw ValidationError("grid", "grid for '" + g.key + "' is empty");
    return g;
}

std::string resolve(const std::string& key, const std::string& expr, const std::map<std::string, std::string>& env) {
    if (as_number(expr)) return expr;
    static const std::regex ref_op(R"(^([A-Za-z][A-Za-z0-9_-]*?)\s*([+*-])\s*([0-9.eE+-]+)$)");
    static const std::regex num_ref(R"(^([0-9.eE+-]+?)\s*\*?\s*([A-Za-z][A-Za-z0-9_-]*)$)");
    std::smatch m;
    auto lookup = [&](const std::string& name) {
        auto it = env.find(name);
        if (it == env.end()) throw ValidationError(key, "grid value '" + expr + "' refers to unknown key '" + name + "'");
        auto v = as_number(it->second);
        if (!v) throw ValidationError(key, "grid value '" + expr + "' refers to non-numeric '" + name + "'");
        return *v;
    };
    auto number = [&](const std::string& s) {
        auto v = as_number(s);
        if (!v) throw ValidationError(key, "cannot parse grid value '" + expr + "'");
        return *v;
    };
    if (std::regex_match(expr, m, ref_op)) {
        const double base = lookup(m[1]);
        const double k = number(m[3]);
        const char op = m[2].str()[0];
        return format_double(op == '+' ? base + k : op == '-' ? base - k : base * k);
    }
    if (std::regex_match(expr, m, num_ref)) return format_double(number(m[1]) * lookup(m[2]));
    return expr; // non-numeric value, e.g. a profile path
}

bool tuple_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto x = as_number(a[i]);
        const auto y = as_number(b[i]);
        if (x && y) {
            if (*x != *y) return *x < *y;
        } else if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

} // namespace

std::vector<std::map<std::string, std::string>> expand_grid(const std::vector<std::string>& specs,
                                                            const std::map<std::string, std::string>& base,
                                                            std::size_t cap) {
    if (specs.empty()) throw ValidationError("grid", "sweep needs at least one non-empty --grid");
    std::vector<GridSpec> grids;
    for (const auto& s : specs) {
        grids.push_back(parse_spec(s));
        for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
            if (grids[i].key == grids.back().key) throw ValidationError("grid", "duplicate grid key '" + grids.back().key + "'");
        }
    }
    std::size_t bound = 1;
    for (const auto& g : grids) {
        if (bound > cap / g.values.size() + 1) bound = cap + 1;
        else bound *= g.values.size();
    }
    if (bound > cap) {
        throw ValidationError("grid", "sweep has more than " + std::to_string(cap) + " combinations");
    }

    std::vector<std::vector<std::string>> tuples{{}};
    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
        std::vector<std::vector<std::string>> next;
        for (const auto& t : tuples) {
            auto env = base;
            for (std::size_t k = 0; k < gi; ++k) env[grids[k].key] = t[k];
            for (const auto& expr : grids[gi].values) {
                auto extended = t;
                extended.push_back(resolve(grids[gi].key, expr, env));
                next.push_back(std::move(extended));
            }
        }
        tuples = std::move(next);
    }
    std::stable_sort(tuples.begin(), tuples.end(), tuple_less);
    tuples.erase(std::unique(tuples.begin(), tuples.end(),
                             [](const auto& a, const auto& b) { return !tuple_less(a, b) && !tuple_less(b, a); }),
                 tuples.end());

    std::vector<std::map<std::string, std::string>> combos;
    combos.reserve(tuples.size());
    for (const auto& t : tuples) {
        auto params = base;
        for (std::size_t k = 0; k < grids.size(); ++k) params[grids[k].key] = t[k];
        combos.push_back(std::move(params));
    }
    return combos;
}

RunResult execute_sweep(const RunConfig& config) {
    auto base = config.params;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = base.find(key);
        if (it == base.end()) return std::nullopt;
        std::string v = it->second;
        base.erase(it);
        return v;
    };
    const auto target_name = take("target");
    if (!target_name) throw ValidationError("target", "sweep requires --target");
    const auto target = parse_command(*target_name);
    if (!target || *target == Command::sweep) throw ValidationError("target", "unknown sweep target '" + *target_name + "'");

    std::size_t cap = default_sweep_cap;
    if (auto c = take("cap")) {
        auto v = as_number(*c);
        if (!v || *v < 1 || *v != std::floor(*v)) throw ValidationError("cap", "must be a positive integer");
        cap = static_cast<std::size_t>(*v);
    }
    const auto per_run_dir = take("per-run-json");
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (auto t = take("threads")) {
        auto v = as_number(*t);
        if (!v || *v < 1 || *v != std::floor(*v)) throw ValidationError("threads", "must be a positive integer");
        threads = static_cast<std::size_t>(*v);
    }

    const auto& allowed = allowed_keys(*target);
    auto check_key = [&](const std::string& key) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ValidationError(key, "unknown parameter for sweep target " + *target_name);
        }
    };
    for (const auto& [key, value] : base) check_key(key);
    for (const auto& spec : config.grids) check_key(parse_spec(spec).key);

    const auto combos = expand_grid(config.grids, base, cap);
    std::vector<std::string> grid_keys;
    for (const auto& spec : config.grids) grid_keys.push_back(parse_spec(spec).key);

    struct Row {
        RunResult result;
        std::string error;
    };
    std::vector<Row> rows(combos.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < combos.size(); i = next++) {
            RunConfig sub{*target, combos[i], {}, {}, Format::json};
            try {
                rows[i].result = execute(sub);
            } catch (const Error& e) {
                rows[i].result.exit_code = exit_validation;
                rows[i].result.verdict = "invalid";
                rows[i].error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, combos.size()); ++t) pool.emplace_back(worker);
    }

    // metric columns in first-appearance order
    std::vector<std::string> metric_keys;
    for (const auto& row : rows) {
        for (const auto& [k, v] : row.result.summary) {
            if (std::find(metric_keys.begin(), metric_keys.end(), k) == metric_keys.end()) metric_keys.push_back(k);
        }
    }

    RunResult res;
    std::vector<std::string> head = grid_keys;
    head.insert(head.end(), {"exit_code", "verdict"});
    head.insert(head.end(), metric_keys.begin(), metric_keys.end());
    head.push_back("error");
    res.csv = csv_row(head);

    nlohmann::json jrows = nlohmann::json::array();
    bool any_invalid = false;
    bool any_fail = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        any_invalid = any_invalid || row.result.exit_code == exit_validation;
        any_fail = any_fail || row.result.exit_code == exit_bound_failure;

        std::vector<std::string> fields;
        nlohmann::json jparams;
        for (const auto& k : grid_keys) {
            fields.push_back(combos[i].at(k));
            jparams[k] = combos[i].at(k);
        }
        fields.push_back(std::to_string(row.result.exit_code));
        fields.push_back(row.result.verdict);
        nlohmann::json jmetrics = nlohmann::json::object();
        for (const auto& k : metric_keys) {
            auto it = std::find_if(row.result.summary.begin(), row.result.summary.end(),
                                   [&](const auto& kv) { return kv.first == k; });
            fields.push_back(it == row.result.summary.end() ? "" : it->second);
            if (it != row.result.summary.end()) jmetrics[k] = it->second;
        }
        fields.push_back(row.error);
        res.csv += csv_row(fields);
        jrows.push_back({{"parameters", jparams},
                         {"exit_code", row.result.exit_code},
                         {"verdict", row.result.verdict},
                         {"metrics", jmetrics},
                         {"error", row.error}});

        if (per_run_dir && row.error.empty()) {
            std::filesystem::create_directories(*per_run_dir);
            char name[32];
            std::snprintf(name, sizeof name, "run_%05zu.json", i);
            write_file_atomically(std::filesystem::path(*per_run_dir) / name, row.result.report.dump(2) + "\n");
        }
    }

    res.exit_code = any_invalid ? exit_validation : any_fail ? exit_bound_failure : exit_success;
    res.verdict = any_invalid ? "invalid" : any_fail ? "fail" : "pass";
    res.report["command"] = "sweep";
    res.report["target"] = *target_name;
    res.report["defaults"] = {
        {"cells", default_cells},
        {"samples", default_mean_samples},
        {"seed", default_seed},
        {"grid", {{"points", default_limsup_points}, {"r_min", default_limsup_r_min}, {"r_max", default_limsup_r_max}}},
        {"cap", default_sweep_cap},
    };
    res.report["parameters"] = config.params;
    res.report["grids"] = config.grids;
    res.report["rows"] = jrows;
    res.report["verdict"] = res.verdict;
    res.summary = {{"rows", std::to_string(rows.size())}, {"verdict", res.verdict}};
    return res;
}

} // namespace ringmod::cli
