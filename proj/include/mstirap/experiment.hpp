#pragma once

// Parameter scans and figure-data generation: robustness of the transfer
// efficiency to the shortcut phase, shortcut amplitude and Stokes amplitude,
// plus canonical pulse-shape and time-evolution tables.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mstirap/csv.hpp"
#include "mstirap/propagate.hpp"

namespace mstirap {

enum class ScanParameter { Phase, ShortcutScale, StokesScale, PulseArea };

inline std::string to_string(ScanParameter p) {
    switch (p) {
        case ScanParameter::Phase: return "phase_phi";
        case ScanParameter::ShortcutScale: return "shortcut_scale_xi";
        case ScanParameter::StokesScale: return "stokes_scale_beta";
        case ScanParameter::PulseArea: return "pulse_area_A";
    }
    return "unknown";
}

struct ScanSpec {
    ScanParameter parameter = ScanParameter::Phase;
    std::vector<double> grid;
    LevelScheme scheme = LevelScheme::make(SchemeTag::M21);
    GaussianDrive drive{};
    ShortcutScheme shortcut{ShortcutType::TypeII};
    PropagationConfig propagation{};
};

struct ScanResult {
    std::vector<double> grid;
    std::vector<double> efficiency;
    double argmax_value = 0.0;
};

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> g(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<size_t>(i)] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    return g;
}

inline double scan_point(const ScanSpec& spec, double value) {
    GaussianDrive d = spec.drive;
    ShortcutScheme sc = spec.shortcut;
    switch (spec.parameter) {
        case ScanParameter::Phase: sc.phi = value; break;
        case ScanParameter::ShortcutScale: sc.xi = value; break;
        case ScanParameter::StokesScale: sc.beta = value; break;
        case ScanParameter::PulseArea: d = GaussianDrive::from_area(value, d.delay, d.width); break;
    }
    return transfer_efficiency(propagate(spec.scheme, d, sc, spec.propagation));
}

// One propagation per grid point. Points run concurrently; results are
// gathered in grid order, so the output is deterministic.
inline ScanResult scan(const ScanSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("scan: empty grid");
    if (!std::is_sorted(spec.grid.begin(), spec.grid.end(),
                        [](double a, double b) { return a <= b; }))
        throw std::invalid_argument("scan: grid must be strictly increasing");

    const size_t n = spec.grid.size();
    std::vector<double> eff(n, 0.0);
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (size_t i = w; i < n; i += workers) eff[i] = scan_point(spec, spec.grid[i]);
        }));
    }
    for (auto& t : tasks) t.get();  // rethrows the offending point's failure

    ScanResult out;
    out.grid = spec.grid;
    out.efficiency = std::move(eff);
    const size_t imax = static_cast<size_t>(
        std::max_element(out.efficiency.begin(), out.efficiency.end()) - out.efficiency.begin());
    out.argmax_value = out.grid[imax];
    return out;
}

inline CsvTable scan_table(const ScanSpec& spec, const ScanResult& res) {
    CsvTable table({to_string(spec.parameter), "efficiency"});
    for (size_t i = 0; i < res.grid.size(); ++i) table.add_row({res.grid[i], res.efficiency[i]});
    return table;
}

// Drive and shortcut amplitudes vs t/T. A shortcut-free configuration emits
// the type-II columns filled with zeros.
inline CsvTable emit_pulse_shapes(const LevelScheme& s, const GaussianDrive& d, ShortcutType type,
                                  double t_start = -5.0, double t_end = 5.0, int points = 1001) {
    std::vector<CouplingGroup> groups;
    if (s.tag == SchemeTag::ThreeState)
        groups = {{"Omega_Q", {{0, 2}}}};
    else if (type == ShortcutType::TypeI)
        groups = shortcut_type_I(s, MixingState{}).groups;
    else if (type == ShortcutType::TypeIII)
        groups = type_III_groups(s);
    else
        groups = type_II_groups(s);

    std::vector<std::string> header{"t_over_T", "Omega_P", "Omega_S"};
    for (const auto& g : groups) header.push_back(g.name);
    CsvTable table(std::move(header));

    ReducedShortcutTracker tracker(s, d);
    for (double t : linspace(t_start, t_end, points)) {
        const DriveSample ds = evaluate_drive(d, t);
        std::vector<double> row{t, ds.omega_p, ds.omega_s};
        if (type == ShortcutType::None || std::hypot(ds.omega_p, ds.omega_s) <= 0.0) {
            row.insert(row.end(), groups.size(), 0.0);
        } else if (type == ShortcutType::NumericReduced && s.tag != SchemeTag::ThreeState) {
            const ShortcutFields f = tracker.fields_at(t);
            row.insert(row.end(), f.amplitudes.begin(), f.amplitudes.end());
        } else {
            const ShortcutFields f = analytic_shortcut_fields(s, type, mixing_state(ds, t));
            row.insert(row.end(), f.amplitudes.begin(), f.amplitudes.end());
        }
        table.add_row(row);
    }
    return table;
}

// Trajectory export: t/T, Re/Im of each amplitude, diabatic populations,
// and the dark-state population (NaN where the eigenframe is undefined).
inline CsvTable trajectory_table(const TrajectoryResult& tr, const LevelScheme& s,
                                 const GaussianDrive& d) {
    const int n = s.dim;
    std::vector<std::string> header{"t_over_T"};
    for (int k = 1; k <= n; ++k) {
        header.push_back("re_c" + std::to_string(k));
        header.push_back("im_c" + std::to_string(k));
    }
    for (int k = 1; k <= n; ++k) header.push_back("P" + std::to_string(k));
    header.push_back("P_dark");
    CsvTable table(std::move(header));

    const AdiabaticHistory ad = adiabatic_projection(tr, s, d);
    for (size_t i = 0; i < tr.times.size(); ++i) {
        std::vector<double> row{tr.times[i]};
        for (int k = 0; k < n; ++k) {
            row.push_back(tr.amplitudes[i](k).real());
            row.push_back(tr.amplitudes[i](k).imag());
        }
        for (int k = 0; k < n; ++k) row.push_back(tr.populations[i][static_cast<size_t>(k)]);
        row.push_back(ad.valid[i] ? ad.populations[i][static_cast<size_t>(ad.dark_index)]
                                  : std::nan(""));
        table.add_row(row);
    }
    return table;
}

// Canonical figure data: the Gaussian drive with peak 10 sqrt(pi)/T and
// delay tau = T throughout.
inline std::vector<std::string> reproduce_figure(int fig, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    const GaussianDrive drive{};  // defaults are the canonical parameters
    auto path = [&](const std::string& name) {
        return (std::filesystem::path(outdir) / name).string();
    };
    std::vector<std::string> written;
    auto emit = [&](const CsvTable& table, const std::string& name) {
        const std::string p = path(name);
        table.write(p);
        written.push_back(p);
    };

    switch (fig) {
        case 3:
            emit(emit_pulse_shapes(LevelScheme::make(SchemeTag::M21), drive, ShortcutType::TypeI),
                 "fig3_m21.csv");
            emit(emit_pulse_shapes(LevelScheme::make(SchemeTag::M22), drive, ShortcutType::TypeI),
                 "fig3_m22.csv");
            break;
        case 4: {
            const LevelScheme s = LevelScheme::make(SchemeTag::M21);
            const PropagationConfig cfg;
            const TrajectoryResult bare = propagate(s, drive, ShortcutScheme{}, cfg);
            const TrajectoryResult cut =
                propagate(s, drive, ShortcutScheme{ShortcutType::TypeII}, cfg);
            CsvTable table({"t_over_T", "P_minus2_to_2_no_shortcut", "P_minus2_to_2_type2"});
            for (size_t i = 0; i < bare.times.size(); ++i)
                table.add_row({bare.times[i], bare.populations[i].back(), cut.populations[i].back()});
            emit(table, "fig4.csv");
            break;
        }
        case 5:
            emit(emit_pulse_shapes(LevelScheme::make(SchemeTag::M21), drive, ShortcutType::TypeIII),
                 "fig5_m21.csv");
            emit(emit_pulse_shapes(LevelScheme::make(SchemeTag::M22), drive, ShortcutType::TypeIII),
                 "fig5_m22.csv");
            break;
        case 6:
        case 7:
        case 8: {
            ScanSpec spec;
            spec.drive = drive;
            spec.shortcut = ShortcutScheme{ShortcutType::TypeII};
            if (fig == 6) {
                spec.parameter = ScanParameter::Phase;
                spec.grid = linspace(0.0, M_PI, 81);
            } else {
                spec.parameter = fig == 7 ? ScanParameter::ShortcutScale : ScanParameter::StokesScale;
                spec.grid = linspace(0.0, 2.0, 81);
            }
            spec.scheme = LevelScheme::make(SchemeTag::M21);
            const ScanResult r21 = scan(spec);
            spec.scheme = LevelScheme::make(SchemeTag::M22);
            const ScanResult r22 = scan(spec);
            CsvTable table({to_string(spec.parameter), "efficiency_m21", "efficiency_m22"});
            for (size_t i = 0; i < r21.grid.size(); ++i)
                table.add_row({r21.grid[i], r21.efficiency[i], r22.efficiency[i]});
            emit(table, "fig" + std::to_string(fig) + ".csv");
            break;
        }
        default:
            throw std::invalid_argument("reproduce_figure: unknown figure id " +
                                        std::to_string(fig));
    }
    return written;
}

}  // namespace mstirap
