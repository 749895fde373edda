#include "hcf/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "hcf/config.hpp"
#include "hcf/error.hpp"
#include "hcf/linklevel.hpp"
#include "hcf/montecarlo.hpp"
#include "hcf/report.hpp"

namespace hcf::cli {

namespace {

namespace fs = std::filesystem;

/// Options shared by every subcommand. Unset optionals leave the config
/// file (or the default) in place.
struct CommonOptions {
    std::string config_file;
    std::string out_dir;
    std::vector<std::string> settings;
    std::optional<std::string> arch;
    std::optional<double> inner_radius;
    std::optional<std::size_t> epochs;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<int> users;
    std::optional<int> antennas;
    std::optional<int> cbs_antennas;
    std::optional<std::string> placement;
    std::optional<std::string> pooling;
    std::optional<double> shadowing;
};

void add_common(CLI::App& app, CommonOptions& o, bool scenario_flags) {
    app.add_option("--config", o.config_file, "Flat key = value config file")->check(CLI::ExistingFile);
    app.add_option("--out", o.out_dir, std::string("Output directory (default $") + kOutputDirEnv + " or results/)");
    app.add_option("--set", o.settings, "Override any config key: --set key=value");
    app.add_option("--epochs", o.epochs, "Number of epochs");
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    app.add_option("--users", o.users, "User count K");
    app.add_option("--antennas", o.antennas, "Total antenna count M");
    app.add_option("--shadowing", o.shadowing, "Shadowing standard deviation in dB");
    app.add_option("--placement", o.placement, "AP placement: random or ring");
    app.add_option("--pooling", o.pooling, "5%-likely pooling: pooled or epoch-min");
    if (scenario_flags) {
        app.add_option("--arch", o.arch, "Architecture: cf, uc or hcf");
        app.add_option("--inner-radius", o.inner_radius, "HCF inner radius r in meters");
        app.add_option("--cbs-antennas", o.cbs_antennas, "CBS antenna count N_b");
    }
}

RunConfig build_config(const CommonOptions& o) {
    RunConfig c;
    if (!o.config_file.empty()) load_config_file(c, o.config_file);
    if (o.arch) apply_setting(c, "arch", *o.arch);
    if (o.inner_radius) c.scenario.layout.inner_radius_m = *o.inner_radius;
    if (o.epochs) c.epochs = *o.epochs;
    if (o.seed) c.seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (o.users) c.scenario.layout.users = *o.users;
    if (o.antennas) c.scenario.layout.total_antennas = *o.antennas;
    if (o.cbs_antennas) apply_setting(c, "cbs_antennas", std::to_string(*o.cbs_antennas));
    if (o.placement) apply_setting(c, "ap_placement", *o.placement);
    if (o.pooling) apply_setting(c, "pooling", *o.pooling);
    if (o.shadowing) c.scenario.shadowing.sigma_db = *o.shadowing;
    for (const auto& kv : o.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    c.resolve();
    return c;
}

fs::path output_dir(const CommonOptions& o) {
    if (!o.out_dir.empty()) return o.out_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return "results";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double v, int digits = 3) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

int do_simulate(const CommonOptions& o, const std::string& command, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto config = build_config(o);
    const auto aggregate = run_campaign(config.plan());
    const auto dir = output_dir(o);
    write_campaign(dir, aggregate, config);
    write_manifest(dir, {config, command, seconds_since(start)});
    out << to_string(config.scenario.layout.architecture) << " epochs=" << aggregate.epochs
        << " mean_sum_se_ul=" << fixed(aggregate.mean_sum_ul) << " p05_se_ul=" << fixed(aggregate.five_percent_ul)
        << " mean_sum_se_dl=" << fixed(aggregate.mean_sum_dl) << " p05_se_dl=" << fixed(aggregate.five_percent_dl)
        << " fronthaul=" << fixed(aggregate.mean_fronthaul_total(), 1) << '\n';
    out << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int do_validate(const CommonOptions& o, const std::string& command, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto config = build_config(o);
    OracleOptions opt;
    opt.draws = config.draws;
    opt.tolerance = config.tolerance;
    opt.term_tolerance = config.term_tolerance;
    opt.seed = config.seed;
    opt.threads = config.threads;
    const auto report = validate_closed_form(config.scenario, config.layouts, opt);

    std::map<LinkKind, std::pair<int, double>> per_kind;
    for (const auto& c : report.checks) {
        auto& [count, worst] = per_kind[c.kind];
        ++count;
        worst = std::max(worst, c.sinr_deviation());
    }
    for (const auto& [kind, stats] : per_kind)
        out << to_string(kind) << ": " << (stats.second <= report.tolerance ? "PASS" : "FAIL") << " checks="
            << stats.first << " max_deviation=" << fixed(stats.second, 4) << '\n';
    double worst_term = 0;
    for (const auto& c : report.checks) worst_term = std::max(worst_term, c.max_term_deviation());
    out << "terms: " << (report.terms_passed() ? "PASS" : "FAIL") << " max_deviation=" << fixed(worst_term, 4)
        << " (tolerance " << report.term_tolerance << ")\n";
    for (const auto& f : report.failures())
        out << "  offending layout=" << f.epoch << " user=" << f.user << " link=" << to_string(f.kind)
            << " ratio=" << fixed(f.ratio, 4) << '\n';
    out << (report.passed() ? "PASS" : "FAIL") << '\n';

    if (!o.out_dir.empty() || std::getenv(kOutputDirEnv)) {
        const auto dir = output_dir(o);
        fs::create_directories(dir);
        std::ofstream(dir / "validation.json") << validation_json(report).dump(2) << '\n';
        write_manifest(dir, {config, command, seconds_since(start)});
    }
    return report.passed() ? kExitOk : kExitValidationFailed;
}

int do_compare(const CommonOptions& o, const std::vector<double>& radii, const std::string& command,
               std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    struct Row {
        std::string label;
        double radius;
        CampaignAggregate agg;
    };
    std::vector<Row> rows;
    auto run_arch = [&](Architecture arch, double radius) {
        auto opts = o;
        opts.arch = std::string(to_string(arch));
        if (arch == Architecture::Hierarchical) opts.inner_radius = radius;
        auto config = build_config(opts);
        rows.push_back({std::string(to_string(arch)), arch == Architecture::Hierarchical ? radius : 0.0,
                        run_campaign(config.plan())});
    };
    run_arch(Architecture::CellFree, 0.0);
    run_arch(Architecture::UserCentric, 0.0);
    for (double r : radii) run_arch(Architecture::Hierarchical, r);

    const double cf_fronthaul = rows.front().agg.mean_fronthaul_total();
    std::ostringstream csv;
    csv << "architecture,inner_radius_m,mean_sum_se_ul,five_percent_se_ul,mean_sum_se_dl,five_percent_se_dl,"
           "mean_fronthaul_symbols,fronthaul_ratio_to_cf\n";
    out << std::left << std::setw(6) << "arch" << std::setw(8) << "r[m]" << std::setw(12) << "sum_ul" << std::setw(10)
        << "p05_ul" << std::setw(12) << "sum_dl" << std::setw(10) << "p05_dl" << std::setw(12) << "fronthaul"
        << "ratio_cf\n";
    nlohmann::json j = nlohmann::json::array();
    const auto probe = build_config(o);
    for (const auto& r : rows) {
        const double ratio = r.agg.mean_fronthaul_total() / cf_fronthaul;
        out << std::setw(6) << r.label << std::setw(8) << r.radius << std::setw(12) << fixed(r.agg.mean_sum_ul)
            << std::setw(10) << fixed(r.agg.five_percent_ul) << std::setw(12) << fixed(r.agg.mean_sum_dl)
            << std::setw(10) << fixed(r.agg.five_percent_dl) << std::setw(12) << fixed(r.agg.mean_fronthaul_total(), 1)
            << fixed(ratio) << '\n';
        csv << r.label << ',' << format_double(r.radius) << ',' << format_double(r.agg.mean_sum_ul) << ','
            << format_double(r.agg.five_percent_ul) << ',' << format_double(r.agg.mean_sum_dl) << ','
            << format_double(r.agg.five_percent_dl) << ',' << format_double(r.agg.mean_fronthaul_total()) << ','
            << format_double(ratio) << '\n';
        j.push_back({{"architecture", r.label},
                     {"inner_radius_m", r.radius},
                     {"mean_sum_se_ul", r.agg.mean_sum_ul},
                     {"five_percent_se_ul", r.agg.five_percent_ul},
                     {"mean_sum_se_dl", r.agg.mean_sum_dl},
                     {"five_percent_se_dl", r.agg.five_percent_dl},
                     {"mean_fronthaul_symbols", r.agg.mean_fronthaul_total()},
                     {"fronthaul_ratio_to_cf", ratio}});
    }
    const auto dir = output_dir(o);
    fs::create_directories(dir);
    std::ofstream(dir / "compare.csv") << csv.str();
    std::ofstream(dir / "compare.json") << j.dump(2) << '\n';
    write_manifest(dir, {probe, command, seconds_since(start)});
    out << "wrote " << dir.string() << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical cell-free massive MIMO system simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersionTag);

    CommonOptions sim_opts, val_opts, cmp_opts;
    std::vector<double> radii{100.0, 250.0, 500.0};
    std::optional<std::size_t> draws;
    std::optional<double> tolerance, term_tolerance;
    std::optional<int> layouts;

    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo campaign for one architecture");
    add_common(*simulate, sim_opts, true);

    auto* validate = app.add_subcommand("validate", "Check closed-form SINRs against the link-level oracle");
    add_common(*validate, val_opts, true);
    validate->add_option("--draws", draws, "Small-scale fading draws per layout");
    validate->add_option("--tolerance", tolerance, "Allowed |empirical/closed-form - 1| per SINR");
    validate->add_option("--term-tolerance", term_tolerance, "Allowed deviation per term power");
    validate->add_option("--layouts", layouts, "Number of independent layouts to check");

    auto* compare = app.add_subcommand("compare", "CF vs UC vs HCF on shared seeds");
    add_common(*compare, cmp_opts, false);
    compare->add_option("--radii", radii, "HCF inner radii in meters")->delimiter(',');

    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return do_simulate(sim_opts, command, out);
        if (*validate) {
            if (draws) val_opts.settings.push_back("draws=" + std::to_string(*draws));
            if (tolerance) val_opts.settings.push_back("tolerance=" + format_double(*tolerance));
            if (term_tolerance) val_opts.settings.push_back("term_tolerance=" + format_double(*term_tolerance));
            if (layouts) val_opts.settings.push_back("layouts=" + std::to_string(*layouts));
            return do_validate(val_opts, command, out);
        }
        if (*compare) return do_compare(cmp_opts, radii, command, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hcf::cli
