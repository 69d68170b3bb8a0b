// Command-line front end: simulate / scan / pulses / verify / reproduce.
// All quantities are dimensionless: times in units of the pulse width T,
// frequencies in 1/T.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <mstirap/experiment.hpp>
#include <mstirap/verify.hpp>

namespace {

// Pulse areas are accepted symbolically as multiples of pi ("10pi", "pi",
// "0.5pi") or as plain numbers, to avoid transcribing 10*sqrt(pi) peaks.
double parse_area(const std::string& text) {
    std::string s = text;
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = M_PI;
        s.erase(s.size() - 2);
        if (s.empty()) return M_PI;
    }
    size_t used = 0;
    const double value = std::stod(s, &used);
    if (used != s.size()) throw CLI::ValidationError("area", "cannot parse area '" + text + "'");
    return value * factor;
}

struct CommonOptions {
    std::string scheme = "m21";
    std::string area = "10pi";
    double tau = 1.0;
    double width = 1.0;
    std::string shortcut = "none";
    double phi_over_pi = 0.5;
    double xi = 1.0;
    double beta = 1.0;
    int steps = 4096;
    double t_start = -5.0;
    double t_end = 5.0;
};

void add_drive_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--scheme", o.scheme, "Level scheme: three, m21, m22, sp22, sp3212")
        ->capture_default_str();
    cmd->add_option("--area", o.area, "Pulse area, e.g. 10pi or 31.4159")->capture_default_str();
    cmd->add_option("--tau", o.tau, "Pump-Stokes delay in units of T")->capture_default_str();
    cmd->add_option("--width", o.width, "Pulse width T (sets the time unit)")
        ->capture_default_str();
}

void add_shortcut_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--shortcut", o.shortcut,
                    "Shortcut construction: none, type1, type2, type3, numeric")
        ->capture_default_str();
    cmd->add_option("--phi", o.phi_over_pi, "Shortcut phase on Omega_0,2 in units of pi")
        ->capture_default_str();
    cmd->add_option("--xi", o.xi, "Amplitude scale on the Omega_-2,0 shortcut field")
        ->capture_default_str();
    cmd->add_option("--beta", o.beta, "Amplitude scale on the bare Stokes field")
        ->capture_default_str();
}

void add_propagation_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--steps", o.steps, "Integrator steps")->capture_default_str();
    cmd->add_option("--t-start", o.t_start, "Start time in units of T")->capture_default_str();
    cmd->add_option("--t-end", o.t_end, "End time in units of T")->capture_default_str();
}

mstirap::LevelScheme make_scheme(const CommonOptions& o) {
    return mstirap::LevelScheme::make(mstirap::scheme_tag_from_string(o.scheme));
}

mstirap::GaussianDrive make_drive(const CommonOptions& o) {
    return mstirap::GaussianDrive::from_area(parse_area(o.area), o.tau, o.width);
}

mstirap::ShortcutScheme make_shortcut(const CommonOptions& o) {
    mstirap::ShortcutScheme sc;
    sc.type = mstirap::shortcut_type_from_string(o.shortcut);
    sc.phi = o.phi_over_pi * M_PI;
    sc.xi = o.xi;
    sc.beta = o.beta;
    return sc;
}

mstirap::PropagationConfig make_propagation(const CommonOptions& o) {
    mstirap::PropagationConfig cfg;
    cfg.steps = o.steps;
    cfg.t_start = o.t_start;
    cfg.t_end = o.t_end;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multistate STIRAP laboratory: trajectories, shortcut fields, robustness scans"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "Read options from an INI-style config file");
    std::string dump_path;
    app.add_option("--dump-config", dump_path,
                   "Write the resolved configuration to FILE and exit")
        ->configurable(false);

    CommonOptions opt;

    CLI::App* simulate = app.add_subcommand("simulate", "Propagate one trajectory");
    simulate->configurable();
    add_drive_options(simulate, opt);
    add_shortcut_options(simulate, opt);
    add_propagation_options(simulate, opt);
    std::string sim_output;
    simulate->add_option("--output", sim_output, "Trajectory CSV path (optional)");

    CLI::App* scan_cmd = app.add_subcommand("scan", "Sweep one parameter, record efficiencies");
    scan_cmd->configurable();
    add_drive_options(scan_cmd, opt);
    add_shortcut_options(scan_cmd, opt);
    add_propagation_options(scan_cmd, opt);
    std::string scan_parameter = "phase";
    double scan_min = 0.0, scan_max = 1.0;
    int scan_points = 81;
    std::string scan_output = "scan.csv";
    scan_cmd->add_option("--parameter", scan_parameter, "phase, xi, beta, or area")
        ->capture_default_str();
    auto* min_opt = scan_cmd->add_option("--min", scan_min, "Grid start (phase in units of pi)")
                        ->capture_default_str();
    auto* max_opt = scan_cmd->add_option("--max", scan_max, "Grid end (phase in units of pi)")
                        ->capture_default_str();
    scan_cmd->add_option("--points", scan_points, "Grid size")->capture_default_str();
    scan_cmd->add_option("--output", scan_output, "Scan CSV path")->capture_default_str();

    CLI::App* pulses = app.add_subcommand("pulses", "Emit drive and shortcut pulse shapes");
    pulses->configurable();
    add_drive_options(pulses, opt);
    add_shortcut_options(pulses, opt);
    int pulse_points = 1001;
    std::string pulse_output = "pulses.csv";
    pulses->add_option("--points", pulse_points, "Samples over [t_start, t_end]")
        ->capture_default_str();
    pulses->add_option("--output", pulse_output, "Pulse-shape CSV path")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "Run the oracle-equivalence and invariant suite");
    verify->configurable();

    CLI::App* reproduce = app.add_subcommand("reproduce", "Write figure data sets");
    reproduce->configurable();
    int fig = 0;
    std::string outdir = "figures";
    reproduce->add_option("--fig", fig, "Figure id (3-8)")->required();
    reproduce->add_option("--outdir", outdir, "Output directory")->capture_default_str();

    // let trailing global options (--dump-config) reach the parent parser
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) {
            std::cerr << "error: cannot write config file '" << dump_path << "'\n";
            return 1;
        }
        out << app.config_to_str(false, false);
        std::cout << "wrote " << dump_path << "\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }

    try {
        if (simulate->parsed()) {
            const mstirap::LevelScheme s = make_scheme(opt);
            const mstirap::GaussianDrive d = make_drive(opt);
            const mstirap::TrajectoryResult tr =
                mstirap::propagate(s, d, make_shortcut(opt), make_propagation(opt));
            if (!sim_output.empty()) {
                mstirap::trajectory_table(tr, s, d).write(sim_output);
                std::cout << "wrote " << sim_output << "\n";
            }
            std::printf("final efficiency: %.9f\n", mstirap::transfer_efficiency(tr));
        } else if (scan_cmd->parsed()) {
            mstirap::ScanSpec spec;
            spec.scheme = make_scheme(opt);
            spec.drive = make_drive(opt);
            spec.shortcut = make_shortcut(opt);
            spec.propagation = make_propagation(opt);
            double lo = scan_min, hi = scan_max;
            const bool max_given = max_opt->count() > 0;
            if (scan_parameter == "phase") {
                spec.parameter = mstirap::ScanParameter::Phase;
                lo *= M_PI;
                hi *= M_PI;
            } else if (scan_parameter == "xi") {
                spec.parameter = mstirap::ScanParameter::ShortcutScale;
                if (!max_given) hi = 2.0;
            } else if (scan_parameter == "beta") {
                spec.parameter = mstirap::ScanParameter::StokesScale;
                if (!max_given) hi = 2.0;
            } else if (scan_parameter == "area") {
                spec.parameter = mstirap::ScanParameter::PulseArea;
                if (min_opt->count() == 0) lo = M_PI;
                if (!max_given) hi = 20.0 * M_PI;
            } else {
                std::cerr << "error: unknown scan parameter '" << scan_parameter << "'\n";
                return 1;
            }
            spec.grid = mstirap::linspace(lo, hi, scan_points);
            const mstirap::ScanResult res = mstirap::scan(spec);
            mstirap::scan_table(spec, res).write(scan_output);
            std::cout << "wrote " << scan_output << "\n";
            std::printf("argmax %s = %.9g\n", mstirap::to_string(spec.parameter).c_str(),
                        res.argmax_value);
        } else if (pulses->parsed()) {
            const mstirap::LevelScheme s = make_scheme(opt);
            const mstirap::GaussianDrive d = make_drive(opt);
            mstirap::emit_pulse_shapes(s, d, mstirap::shortcut_type_from_string(opt.shortcut),
                                       opt.t_start, opt.t_end, pulse_points)
                .write(pulse_output);
            std::cout << "wrote " << pulse_output << "\n";
        } else if (verify->parsed()) {
            int failures = 0;
            for (const auto& r : mstirap::run_verification_suite()) {
                std::printf("[%s] %s — %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                if (!r.pass) ++failures;
            }
            if (failures != 0) {
                std::printf("%d check(s) failed\n", failures);
                return 1;
            }
            std::printf("all checks passed\n");
        } else if (reproduce->parsed()) {
            for (const std::string& p : mstirap::reproduce_figure(fig, outdir))
                std::cout << "wrote " << p << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
