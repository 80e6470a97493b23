#include "ial/cli.hpp"

#include "ial/rates.hpp"
#include "ial/records_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace ial {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <class T>
T get_as(const json& v, const std::string& key)
{
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config key '" + key + "' has the wrong type");
    }
}

std::size_t get_count(const json& v, const std::string& key)
{
    if (!v.is_number_unsigned()) throw std::invalid_argument("config key '" + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::vector<EstimatorKind> parse_estimator_list(const std::vector<std::string>& names)
{
    std::vector<EstimatorKind> out;
    for (const auto& n : names) out.push_back(parse_estimator(n));
    return out;
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::size_t parse_thread_env(const char* raw)
{
    std::size_t v = 0;
    const std::string_view s(raw);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 1)
        throw std::invalid_argument("IAL_THREADS must be a positive integer, got '" + std::string(s) + "'");
    return v;
}

std::string read_text_file(const fs::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read config '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("failed reading config '" + path.string() + "'");
    return ss.str();
}

// Flags shared by the experiment subcommands.
struct RunFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    std::optional<std::size_t> threads;
    std::optional<std::string> sweep;
    std::optional<std::string> estimators;
    bool timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f)
{
    cmd->add_option("--config", f.config, "JSON config file (flat keys)");
    cmd->add_option("--out", f.out, "output directory")->required();
    cmd->add_option("--seed", f.seed, "base seed");
    cmd->add_option("--replicates", f.replicates, "replicates per cell");
    cmd->add_option("--threads", f.threads, "worker threads (overrides IAL_THREADS)");
    cmd->add_option("--sweep", f.sweep, "swept parameter: n s_g d_z d_x sigma_x sigma_y");
    cmd->add_option("--estimators", f.estimators, "comma-separated estimator names");
    cmd->add_flag("--timing", f.timing, "record wall time per cell (breaks byte-reproducibility)");
}

// Precedence, lowest first: built-in defaults, config file, IAL_THREADS
// (threads only), flags.
ExperimentConfig build_config(ExperimentConfig cfg, const RunFlags& f)
{
    bool config_has_values = false;
    if (!f.config.empty()) {
        const std::string text = read_text_file(f.config);
        config_has_values = json::parse(text, nullptr, false).contains("sweep_values");
        cfg = parse_config_json(text, cfg);
    }
    if (const char* env = std::getenv("IAL_THREADS")) cfg.threads = parse_thread_env(env);
    if (f.seed) cfg.base_seed = *f.seed;
    if (f.replicates) cfg.replicates = *f.replicates;
    if (f.threads) cfg.threads = *f.threads;
    if (f.sweep && *f.sweep != cfg.sweep_param) {
        cfg.sweep_param = *f.sweep;
        if (!config_has_values) cfg.sweep_values = default_sweep_values(cfg.sweep_param);
    }
    if (f.estimators) cfg.estimators = parse_estimator_list(split_commas(*f.estimators));
    if (f.timing) cfg.record_timing = true;
    cfg.validate();
    return cfg;
}

fs::path prepare_out_dir(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
    return fs::path(dir);
}

void write_experiment(const fs::path& dir, std::string_view prefix, const std::vector<ResultRecord>& records)
{
    const std::string p(prefix);
    write_text_file(dir / (p + "_records.csv"), records_csv(records));
    write_text_file(dir / (p + "_agg.csv"), aggregate_csv(aggregate(records)));
    write_text_file(dir / (p + "_targets.csv"), targets_csv(records));
}

json slope_json(const RateSlopeResult& result)
{
    json arr = json::array();
    for (const auto& s : result.slopes) {
        json medians = json::array();
        for (const auto& p : s.median_errors) medians.push_back({{"n", p.n}, {"median_error", p.error}});
        arr.push_back({{"estimator", std::string(to_string(s.estimator))},
                       {"slope", s.fit.slope},
                       {"intercept", s.fit.intercept},
                       {"theoretical_exponent", s.theoretical_exponent},
                       {"theoretical_exponents", s.theoretical_exponents},
                       {"regime_change", s.regime_change},
                       {"median_errors", medians}});
    }
    return arr;
}

} // namespace

ExperimentConfig parse_config_json(std::string_view text, ExperimentConfig cfg)
{
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw std::invalid_argument("config is not valid JSON");
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

    for (const auto& [key, v] : doc.items()) {
        ProblemSpec& b = cfg.base;
        if (key == "d_z") b.d_z = static_cast<int>(get_count(v, key));
        else if (key == "d_x") b.d_x = static_cast<int>(get_count(v, key));
        else if (key == "s_f") b.s_f = get_as<double>(v, key);
        else if (key == "s_g") b.s_g = get_as<double>(v, key);
        else if (key == "sigma_x") b.sigma_x = get_as<double>(v, key);
        else if (key == "sigma_y") b.sigma_y = get_as<double>(v, key);
        else if (key == "n") b.n = static_cast<std::int64_t>(get_count(v, key));
        else if (key == "delta") b.delta = get_as<double>(v, key);
        else if (key == "sweep_param") cfg.sweep_param = get_as<std::string>(v, key);
        else if (key == "sweep_values") cfg.sweep_values = get_as<std::vector<double>>(v, key);
        else if (key == "estimators") cfg.estimators = parse_estimator_list(get_as<std::vector<std::string>>(v, key));
        else if (key == "replicates") cfg.replicates = get_count(v, key);
        else if (key == "base_seed") cfg.base_seed = get_count(v, key);
        else if (key == "metric") cfg.metric = parse_norm(get_as<std::string>(v, key));
        else if (key == "cv_folds") cfg.cv_folds = get_count(v, key);
        else if (key == "threads") cfg.threads = get_count(v, key);
        else if (key == "record_timing") cfg.record_timing = get_as<bool>(v, key);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return cfg;
}

std::string rates_json(const ProblemSpec& spec)
{
    const RateReport r = rate_report(spec);
    const json doc{
        {"phi_passive", r.phi_passive},
        {"phi_active_upper", r.phi_active_upper},
        {"phi_active_lower", r.phi_active_lower},
        {"dominating_terms",
         {{"passive", r.passive_term}, {"active_upper", r.active_upper_term}, {"active_lower", r.active_lower_term}}},
    };
    return doc.dump();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Indirect active learning experiments and rate calculators", "ial"};
    app.require_subcommand(1);

    RunFlags exp1_flags, exp2_flags, slope_flags;
    auto* exp1 = app.add_subcommand("exp1", "synthetic sweep; writes exp1_records.csv and exp1_agg.csv");
    add_run_flags(exp1, exp1_flags);
    auto* exp2 = app.add_subcommand("exp2", "epidemic forecasting; writes exp2_records.csv and exp2_agg.csv");
    add_run_flags(exp2, exp2_flags);
    auto* slope = app.add_subcommand("slope", "log-log error slope over n; writes slope_records.csv and slope.json");
    add_run_flags(slope, slope_flags);

    ProblemSpec spec;
    std::string rates_config;
    auto* rates = app.add_subcommand("rates", "print the three rate values as JSON");
    rates->add_option("--config", rates_config, "JSON file with problem fields");
    auto* o_dz = rates->add_option("--d-z", spec.d_z);
    auto* o_dx = rates->add_option("--d-x", spec.d_x);
    auto* o_sf = rates->add_option("--s-f", spec.s_f);
    auto* o_sg = rates->add_option("--s-g", spec.s_g);
    auto* o_sx = rates->add_option("--sigma-x", spec.sigma_x);
    auto* o_sy = rates->add_option("--sigma-y", spec.sigma_y);
    auto* o_n = rates->add_option("--n", spec.n);
    auto* o_delta = rates->add_option("--delta", spec.delta);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        if (rates->parsed()) {
            if (!rates_config.empty()) {
                // Flags override the file, so reapply whatever was given explicitly.
                const ProblemSpec from_flags = spec;
                ExperimentConfig base;
                base.base = ProblemSpec{};
                spec = parse_config_json(read_text_file(rates_config), base).base;
                if (o_dz->count()) spec.d_z = from_flags.d_z;
                if (o_dx->count()) spec.d_x = from_flags.d_x;
                if (o_sf->count()) spec.s_f = from_flags.s_f;
                if (o_sg->count()) spec.s_g = from_flags.s_g;
                if (o_sx->count()) spec.sigma_x = from_flags.sigma_x;
                if (o_sy->count()) spec.sigma_y = from_flags.sigma_y;
                if (o_n->count()) spec.n = from_flags.n;
                if (o_delta->count()) spec.delta = from_flags.delta;
            }
            out << rates_json(spec) << '\n';
            return kExitOk;
        }
        if (exp1->parsed()) {
            const auto cfg = build_config(default_exp1_config(exp1_flags.sweep.value_or("n")), exp1_flags);
            const auto dir = prepare_out_dir(exp1_flags.out);
            write_experiment(dir, "exp1", run_exp1(cfg));
            return kExitOk;
        }
        if (exp2->parsed()) {
            const auto cfg = build_config(default_exp2_config(), exp2_flags);
            const auto dir = prepare_out_dir(exp2_flags.out);
            write_experiment(dir, "exp2", run_exp2(cfg));
            return kExitOk;
        }
        if (slope->parsed()) {
            const auto cfg = build_config(default_rate_slope_config(), slope_flags);
            const auto dir = prepare_out_dir(slope_flags.out);
            const auto result = run_rate_slope(cfg);
            write_text_file(dir / "slope_records.csv", records_csv(result.records));
            write_text_file(dir / "slope.json", slope_json(result).dump(2) + "\n");
            out << slope_json(result).dump() << '\n';
            return kExitOk;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace ial
