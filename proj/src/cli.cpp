#include "fkg/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fkg/config.hpp"
#include "fkg/harness.hpp"
#include "fkg/io.hpp"

namespace fkg::cli {

using json = nlohmann::json;

namespace {

constexpr const char* kOutputEnvVar = "FKG_OUTPUT_DIR";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path resolve_out_dir(const std::string& cli_out,
                                      const SimulationConfig& config) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv(kOutputEnvVar); env && *env) return env;
    return config.output_dir;
}

std::string snapshot_name(const std::string& prefix, double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_t%07.3f.csv", prefix.c_str(), t);
    return buf;
}

json report_to_json(const ConvergenceReport& r) {
    json runs = json::array();
    for (const auto& run : r.runs)
        runs.push_back({{"eps", run.eps},
                        {"norm", run.norm},
                        {"ref_norm", run.ref_norm},
                        {"floored", run.floored}});
    json out = {{"experiment", r.experiment},
                {"runs", runs},
                {"pair_diffs", r.pair_diffs},
                {"fitted", r.fitted},
                {"bound", r.bound},
                {"margin", r.margin},
                {"tolerance", r.tolerance},
                {"verdict", r.verdict}};
    if (r.fitted) {
        out["exponent"] = r.fit.exponent;
        out["residual"] = r.fit.residual;
    } else {
        out["exponent"] = nullptr;
        out["residual"] = nullptr;
    }
    return out;
}

void announce(const std::filesystem::path& path) {
    std::cout << "wrote " << path.string() << "\n";
}

int cmd_run(const std::string& config_path, const std::string& cli_out) {
    const SimulationConfig config = parse_config(read_file(config_path));
    const std::filesystem::path dir = resolve_out_dir(cli_out, config);
    io::DirLock lock(dir);

    const Grid1D grid = make_grid(config);
    const MassSpec spec = materialize_mass(config, grid);
    const RegularizedMass m = regularize(spec, config.epsilons.front(), grid);
    const std::string hash = config_hash(config);

    EvolveOptions opt;
    opt.scheme = config.scheme;
    opt.alpha = config.alpha;
    opt.dt = config.dt;
    opt.horizon = config.horizon;
    opt.fd_weight = config.fd_weight;
    opt.snapshot_times = config.snapshot_times;
    const FieldState start = initial_bump(grid);
    const EvolveResult run = evolve(start, m.samples, opt, grid);

    std::vector<EnergyRecord> trace;
    std::vector<std::string> files;
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
        const std::string name = snapshot_name("snap", config.snapshot_times[i]);
        io::write_snapshot_csv(dir / name, run.snapshots[i], grid, hash);
        announce(dir / name);
        files.push_back(name);
        trace.push_back(energy(run.snapshots[i], m.samples, config.alpha, grid));
    }
    io::write_energy_csv(dir / "energy.csv", trace, hash);
    announce(dir / "energy.csv");

    std::ostringstream plot;
    plot << "# config_hash=" << hash << "\n"
         << "set datafile separator ','\n"
         << "set terminal pngcairo size 1500,900\n"
         << "set output 'run.png'\n"
         << "set multiplot layout 2," << (files.size() + 1 + 1) / 2 << "\n";
    for (std::size_t i = 0; i < files.size(); ++i)
        plot << "plot '" << files[i] << "' skip 2 using 1:2 with lines lw 2 title 't="
             << config.snapshot_times[i] << "'\n";
    plot << "plot 'energy.csv' skip 2 using 1:5 with lines lw 2 title 'total energy'\n"
         << "unset multiplot\n";
    io::write_text(dir / "plot.gp", plot.str());
    announce(dir / "plot.gp");

    json summary = {{"config_hash", hash},
                    {"command", "run"},
                    {"scheme", scheme_name(config.scheme)},
                    {"dt_used", run.dt_used},
                    {"steps", run.steps},
                    {"snapshot_files", files},
                    {"snapshot_offsets", run.offsets}};
    json energies = json::array();
    for (const auto& e : trace)
        energies.push_back({{"t", e.t},
                            {"kinetic", e.kinetic},
                            {"elastic", e.elastic},
                            {"potential", e.potential},
                            {"total", e.total}});
    summary["energy"] = energies;
    io::write_text(dir / "summary.json", summary.dump(2) + "\n");
    announce(dir / "summary.json");
    return 0;
}

SimulationConfig theory_base(const std::string& config_path) {
    if (!config_path.empty()) return parse_config(read_file(config_path));
    SimulationConfig c;
    c.scheme = SchemeId::SpectralStrang;
    c.dt = 0.005;
    return c;
}

int cmd_sweep(int case_id, std::vector<double> eps, const std::string& config_path,
              const std::string& cli_out) {
    SimulationConfig base = theory_base(config_path);
    if (case_id > 0) {
        base.mass.x0 = 40.0;
        base.mass.kind = case_id == 1   ? MassSpec::Kind::Zero
                         : case_id == 2 ? MassSpec::Kind::Delta
                                        : MassSpec::Kind::DeltaSquared;
    }
    const std::filesystem::path dir = resolve_out_dir(cli_out, base);
    io::DirLock lock(dir);

    EpsilonNetPlan plan{eps, base, NormId::L2};
    const Grid1D grid = make_grid(base);
    const MassSpec spec = materialize_mass(base, grid);
    const ModeratenessReport mod = moderateness_exponent(spec, eps, grid);
    const ConvergenceReport existence = existence_experiment(plan);

    json summary = {{"config_hash", config_hash(base)},
                    {"command", "sweep"},
                    {"mass", spec.name()},
                    {"moderateness",
                     {{"eps", mod.eps},
                      {"sup_norms", mod.sup_norms},
                      {"exponent", mod.exponent},
                      {"residual", mod.residual}}},
                    {"existence", report_to_json(existence)}};
    io::write_text(dir / "summary.json", summary.dump(2) + "\n");
    announce(dir / "summary.json");
    std::cout << "moderateness exponent N = " << mod.exponent
              << ", solution growth exponent = "
              << (existence.fitted ? existence.fit.exponent : 0.0)
              << " (bound " << existence.bound << ") -> "
              << (existence.verdict ? "ok" : "FAILED") << "\n";
    return existence.verdict ? 0 : 3;
}

int cmd_uniqueness(int case_id, std::vector<double> eps, double p,
                   const std::string& config_path, const std::string& cli_out) {
    SimulationConfig base = theory_base(config_path);
    if (case_id > 0) {
        base.mass.x0 = 40.0;
        base.mass.kind = case_id == 1   ? MassSpec::Kind::Zero
                         : case_id == 2 ? MassSpec::Kind::Delta
                                        : MassSpec::Kind::DeltaSquared;
    }
    const std::filesystem::path dir = resolve_out_dir(cli_out, base);
    io::DirLock lock(dir);

    EpsilonNetPlan plan{eps, base, NormId::L2};
    const ConvergenceReport exp_report = uniqueness_experiment(plan);
    const ConvergenceReport pow_report = uniqueness_experiment_power(plan, p);

    json summary = {{"config_hash", config_hash(base)},
                    {"command", "uniqueness"},
                    {"exponential", report_to_json(exp_report)},
                    {"power_control", report_to_json(pow_report)}};
    io::write_text(dir / "summary.json", summary.dump(2) + "\n");
    announce(dir / "summary.json");
    std::cout << "negligible perturbation: " << (exp_report.verdict ? "ok" : "FAILED")
              << "; power control p=" << p << ": measured "
              << (pow_report.fitted ? pow_report.fit.exponent : 0.0) << " -> "
              << (pow_report.verdict ? "ok" : "FAILED") << "\n";
    return (exp_report.verdict && pow_report.verdict) ? 0 : 3;
}

int cmd_consistency(const std::string& profile, std::vector<double> eps,
                    const std::string& config_path, const std::string& cli_out) {
    SimulationConfig base = theory_base(config_path);
    base.mass.kind = MassSpec::Kind::Bounded;
    base.mass.profile.shape = profile;
    const std::filesystem::path dir = resolve_out_dir(cli_out, base);
    io::DirLock lock(dir);

    const Grid1D grid = make_grid(base);
    const MassSpec spec = materialize_mass(base, grid);
    EpsilonNetPlan plan{eps, base, NormId::L2};
    const ConvergenceReport report = consistency_experiment(spec, plan);

    json summary = {{"config_hash", config_hash(base)},
                    {"command", "consistency"},
                    {"profile", profile},
                    {"report", report_to_json(report)}};
    io::write_text(dir / "summary.json", summary.dump(2) + "\n");
    announce(dir / "summary.json");
    std::cout << "consistency (" << profile << "): "
              << (report.fitted ? report.fit.exponent : 0.0) << " fitted order, verdict "
              << (report.verdict ? "ok" : "FAILED") << "\n";
    return report.verdict ? 0 : 3;
}

int cmd_figure1(double eps, const std::string& case_arg, const std::string& scheme_arg,
                const std::string& cli_out) {
    const SchemeId scheme =
        scheme_arg == "spectral_strang" ? SchemeId::SpectralStrang : SchemeId::ImplicitFd;
    std::vector<int> cases;
    if (case_arg == "all")
        cases = {1, 2, 3};
    else
        cases = {std::stoi(case_arg)};

    SimulationConfig dir_probe = wall_effect_config(cases.front(), eps, scheme);
    const std::filesystem::path dir = resolve_out_dir(cli_out, dir_probe);
    io::DirLock lock(dir);

    json summary = {{"command", "figure1"}, {"eps", eps}, {"scheme", scheme_name(scheme)}};
    json case_block = json::object();
    double reflection2 = -1.0, reflection3 = -1.0;
    std::vector<std::string> all_files;
    for (int case_id : cases) {
        const SimulationConfig cfg = wall_effect_config(case_id, eps, scheme);
        const std::string hash = config_hash(cfg);
        const Grid1D grid = make_grid(cfg);
        const WallEffectResult wall = wall_effect_experiment(case_id, eps, scheme);

        json snaps = json::array();
        for (std::size_t i = 0; i < wall.snaps.size(); ++i) {
            const std::string name =
                snapshot_name("case" + std::to_string(case_id), wall.times[i]);
            io::write_snapshot_csv(dir / name, wall.snaps[i].state, grid, hash);
            all_files.push_back(name);
            snaps.push_back({{"t", wall.times[i]},
                             {"file", name},
                             {"reflection", wall.snaps[i].scatter.reflection},
                             {"left_mass", wall.snaps[i].scatter.left_mass},
                             {"right_mass", wall.snaps[i].scatter.right_mass},
                             {"left_centroid", wall.snaps[i].left_centroid}});
        }
        const double final_reflection = wall.snaps.back().scatter.reflection;
        if (case_id == 2) reflection2 = final_reflection;
        if (case_id == 3) reflection3 = final_reflection;
        case_block[std::to_string(case_id)] = {{"config_hash", hash},
                                               {"dt_used", wall.dt_used},
                                               {"barrier", wall.barrier},
                                               {"final_reflection", final_reflection},
                                               {"snapshots", snaps}};
        std::cout << "case " << case_id << ": reflection(t=12) = " << final_reflection
                  << "\n";
    }
    summary["cases"] = case_block;

    bool verdict = true;
    if (reflection2 >= 0.0 && reflection3 >= 0.0) {
        verdict = reflection3 > reflection2;
        summary["reflection_ordering_holds"] = verdict;
        std::cout << "reflection ordering case3 > case2: " << (verdict ? "ok" : "FAILED")
                  << "\n";
    }
    io::write_text(dir / "summary.json", summary.dump(2) + "\n");
    announce(dir / "summary.json");

    std::ostringstream plot;
    plot << "set datafile separator ','\n"
         << "set terminal pngcairo size 1500,900\n"
         << "set output 'figure1.png'\n"
         << "set xrange [20:80]\n"
         << "set multiplot layout 2,3\n";
    const std::vector<double> times = {0.0, 8.8, 10.2, 10.6, 11.0, 12.0};
    for (double t : times) {
        plot << "plot ";
        bool first = true;
        for (int case_id : cases) {
            const std::string name = snapshot_name("case" + std::to_string(case_id), t);
            if (!first) plot << ", ";
            plot << "'" << name << "' skip 2 using 1:2 with lines title 'case "
                 << case_id << " t=" << t << "'";
            first = false;
        }
        plot << "\n";
    }
    plot << "unset multiplot\n";
    io::write_text(dir / "plot.gp", plot.str());
    announce(dir / "plot.gp");
    return verdict ? 0 : 3;
}

} // namespace

int run_command(int argc, const char* const* argv) {
    CLI::App app{"fractional wave simulator with singular mass barriers"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir;
    app.add_option("--out", out_dir,
                   "output directory (overrides config and " + std::string(kOutputEnvVar) +
                       ")");

    auto* run = app.add_subcommand("run", "run one configuration and write snapshots");
    std::string run_config;
    run->add_option("--config", run_config, "JSON config file")->required();

    auto* sweep = app.add_subcommand(
        "sweep", "moderateness + solution-growth study over an eps ladder");
    int sweep_case = 2;
    std::vector<double> sweep_eps = {0.1, 0.05, 0.025, 0.0125};
    std::string sweep_config;
    sweep->add_option("--case", sweep_case, "mass case: 1 zero, 2 delta, 3 squared delta")
        ->check(CLI::Range(1, 3));
    sweep->add_option("--eps", sweep_eps, "eps ladder, strictly decreasing")
        ->delimiter(',');
    sweep->add_option("--config", sweep_config, "base JSON config (optional)");

    auto* uniq = app.add_subcommand(
        "uniqueness", "perturbation study: negligible + power-p control");
    int uniq_case = 2;
    std::vector<double> uniq_eps = {0.1, 0.05, 0.025};
    double uniq_p = 2.0;
    std::string uniq_config;
    uniq->add_option("--case", uniq_case, "mass case: 1 zero, 2 delta, 3 squared delta")
        ->check(CLI::Range(1, 3));
    uniq->add_option("--eps", uniq_eps, "eps ladder, strictly decreasing")->delimiter(',');
    uniq->add_option("--p", uniq_p, "order of the power control")->check(CLI::PositiveNumber);
    uniq->add_option("--config", uniq_config, "base JSON config (optional)");

    auto* cons = app.add_subcommand(
        "consistency", "mollified vs unmollified bounded-coefficient comparison");
    std::string cons_profile = "hump";
    std::vector<double> cons_eps = {0.2, 0.1, 0.05};
    std::string cons_config;
    cons->add_option("--profile", cons_profile, "bounded coefficient shape")
        ->check(CLI::IsMember({"hump", "step", "const"}));
    cons->add_option("--eps", cons_eps, "eps ladder, strictly decreasing")->delimiter(',');
    cons->add_option("--config", cons_config, "base JSON config (optional)");

    auto* fig = app.add_subcommand(
        "figure1", "three-case scattering snapshots off the x=40 barrier");
    double fig_eps = 0.05;
    std::string fig_case = "all";
    std::string fig_scheme = "implicit_fd";
    fig->add_option("--eps", fig_eps, "mollifier width")->check(CLI::PositiveNumber);
    fig->add_option("--case", fig_case, "1|2|3|all")
        ->check(CLI::IsMember({"1", "2", "3", "all"}));
    fig->add_option("--scheme", fig_scheme, "integrator")
        ->check(CLI::IsMember({"implicit_fd", "spectral_strang"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_config, out_dir);
        if (sweep->parsed()) return cmd_sweep(sweep_case, sweep_eps, sweep_config, out_dir);
        if (uniq->parsed())
            return cmd_uniqueness(uniq_case, uniq_eps, uniq_p, uniq_config, out_dir);
        if (cons->parsed())
            return cmd_consistency(cons_profile, cons_eps, cons_config, out_dir);
        if (fig->parsed()) return cmd_figure1(fig_eps, fig_case, fig_scheme, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace fkg::cli
