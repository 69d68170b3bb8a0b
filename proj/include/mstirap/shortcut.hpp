#pragma once

// Shortcut-field synthesis: the analytic type I/II/III formulas for the
// printed systems, the three-state shortcut, the full matrix prescription
// H_s = i dW/dt W^dag, and the reduced linear-system solver that extends the
// construction to arbitrary odd chains.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mstirap/drive.hpp"
#include "mstirap/linalg.hpp"
#include "mstirap/scheme.hpp"

namespace mstirap {

enum class ShortcutType { None, TypeI, TypeII, TypeIII, NumericReduced };

inline std::string to_string(ShortcutType t) {
    switch (t) {
        case ShortcutType::None: return "none";
        case ShortcutType::TypeI: return "type1";
        case ShortcutType::TypeII: return "type2";
        case ShortcutType::TypeIII: return "type3";
        case ShortcutType::NumericReduced: return "numeric";
    }
    return "unknown";
}

inline ShortcutType shortcut_type_from_string(const std::string& name) {
    if (name == "none") return ShortcutType::None;
    if (name == "type1" || name == "1" || name == "I") return ShortcutType::TypeI;
    if (name == "type2" || name == "2" || name == "II") return ShortcutType::TypeII;
    if (name == "type3" || name == "3" || name == "III") return ShortcutType::TypeIII;
    if (name == "numeric" || name == "reduced") return ShortcutType::NumericReduced;
    throw std::invalid_argument("unknown shortcut type '" + name + "'");
}

// One shortcut field: a named amplitude applied on one or more matrix
// positions (type III shares a single field between two links).
struct CouplingGroup {
    std::string name;
    std::vector<std::pair<int, int>> links;  // upper-triangle (row < col)
};

struct ShortcutFields {
    ShortcutType type = ShortcutType::None;
    std::vector<CouplingGroup> groups;
    std::vector<double> amplitudes;  // 1/T, same order as groups
    double residual = 0.0;           // least-squares residual of the numeric solver

    double amplitude(const std::string& name) const {
        for (size_t j = 0; j < groups.size(); ++j)
            if (groups[j].name == name) return amplitudes[j];
        throw std::invalid_argument("ShortcutFields: no field named '" + name + "'");
    }
};

// Active shortcut construction plus the perturbation knobs of the robustness
// scans: phase phi on the Omega_{0,2} coupling (ideal pi/2), amplitude scale
// xi on Omega_{-2,0}, Stokes scale beta on the bare Hamiltonian.
struct ShortcutScheme {
    ShortcutType type = ShortcutType::None;
    double phi = M_PI / 2.0;
    double xi = 1.0;
    double beta = 1.0;
    std::string phase_field = "Omega_0,2";
    std::string scale_field = "Omega_-2,0";
};

namespace detail {

inline CouplingGroup group(std::string name, int a, int b) {
    return {std::move(name), {{a, b}}};
}

inline std::vector<CouplingGroup> m_system_groups_type1() {
    return {group("Omega_-2,0", 0, 2), group("Omega_0,2", 2, 4), group("Omega_-2,2", 0, 4),
            group("Omega_-1,1", 1, 3)};
}

}  // namespace detail

// Positions of the type-II shortcut fields: the two links between adjacent
// dark-state sublevels of an odd chain.
inline std::vector<CouplingGroup> type_II_groups(const LevelScheme& s) {
    switch (s.tag) {
        case SchemeTag::M21:
        case SchemeTag::M22:
            return {detail::group("Omega_-2,0", 0, 2), detail::group("Omega_0,2", 2, 4)};
        case SchemeTag::SigmaPi22:
            return {detail::group("Omega_0,1", 0, 2), detail::group("Omega_1,2", 2, 4)};
        case SchemeTag::SigmaPi3212:
            return {detail::group("Omega_-3/2,-1/2", 0, 2), detail::group("Omega_-1/2,1/2", 2, 4)};
        default: {
            std::vector<CouplingGroup> groups;
            for (int k = 0; k + 2 < s.dim; k += 2)
                groups.push_back(detail::group(
                    "Omega_" + std::to_string(k) + "," + std::to_string(k + 2), k, k + 2));
            return groups;
        }
    }
}

// Type-III positions: one shared field on both adjacent links plus an
// independent field on the end-to-end link.
inline std::vector<CouplingGroup> type_III_groups(const LevelScheme& s) {
    if (s.dim != 5)
        throw std::invalid_argument("type_III_groups: defined for five-state chains");
    return {{"Omega_-2,0", {{0, 2}, {2, 4}}}, detail::group("Omega_-2,2", 0, 4)};
}

inline ShortcutFields shortcut_three_state(const MixingState& ms) {
    ShortcutFields f;
    f.type = ShortcutType::TypeI;
    f.groups = {detail::group("Omega_Q", 0, 2)};
    f.amplitudes = {2.0 * ms.theta_dot};
    return f;
}

// Type I: the four fields of the full shortcut-to-adiabaticity prescription.
inline ShortcutFields shortcut_type_I(const LevelScheme& s, const MixingState& ms) {
    const double c2 = std::cos(2.0 * ms.theta);
    const double c4 = std::cos(4.0 * ms.theta);
    const double c6 = std::cos(6.0 * ms.theta);
    const double s2 = std::sin(2.0 * ms.theta);
    const double td = ms.theta_dot;
    ShortcutFields f;
    f.type = ShortcutType::TypeI;
    f.groups = detail::m_system_groups_type1();
    if (s.tag == SchemeTag::M21) {
        const double denom = (3.0 - c4) * (13.0 + 12.0 * c4);
        f.amplitudes = {
            std::sqrt(6.0) * (34.0 + 29.0 * c2 + 26.0 * c4 + 11.0 * c6) / denom * td,
            std::sqrt(6.0) * (34.0 - 29.0 * c2 + 26.0 * c4 - 11.0 * c6) / denom * td,
            -4.0 * (1.0 + 9.0 * c4) * s2 / denom * td,
            10.0 / (13.0 + 12.0 * c4) * td,
        };
    } else if (s.tag == SchemeTag::M22) {
        const double denom = (4.0 * c4 - 5.0) * (c4 + 5.0);
        f.amplitudes = {
            std::sqrt(6.0) * (10.0 + 9.0 * c2 - 14.0 * c4 - c6) / denom * td,
            std::sqrt(6.0) * (10.0 - 9.0 * c2 - 14.0 * c4 + c6) / denom * td,
            12.0 * (5.0 - 3.0 * c4) * s2 / denom * td,
            6.0 / (5.0 - 4.0 * c4) * td,
        };
    } else {
        throw std::invalid_argument("shortcut_type_I: only M21/M22 have printed formulas");
    }
    return f;
}

// Type II: two independent fields between adjacent dark-state sublevels.
inline ShortcutFields shortcut_type_II(const LevelScheme& s, const MixingState& ms) {
    const double c2 = std::cos(2.0 * ms.theta);
    const double c4 = std::cos(4.0 * ms.theta);
    const double td = ms.theta_dot;
    ShortcutFields f;
    f.type = ShortcutType::TypeII;
    f.groups = type_II_groups(s);
    if (s.tag == SchemeTag::M21) {
        f.amplitudes = {4.0 * std::sqrt(2.0 / 3.0) * (2.0 + c2) / (3.0 - c4) * td,
                        4.0 * std::sqrt(2.0 / 3.0) * (2.0 - c2) / (3.0 - c4) * td};
    } else if (s.tag == SchemeTag::M22) {
        f.amplitudes = {-4.0 * std::sqrt(6.0) * (2.0 - c2) / (5.0 + c4) * td,
                        -4.0 * std::sqrt(6.0) * (2.0 + c2) / (5.0 + c4) * td};
    } else if (s.tag == SchemeTag::SigmaPi22) {
        const double cc = std::cos(ms.theta) * std::cos(ms.theta);
        f.amplitudes = {4.0 * std::sqrt(3.0) / (3.0 - cc * cc) * td,
                        2.0 * std::sqrt(2.0) * (3.0 - cc) / (3.0 - cc * cc) * td};
    } else if (s.tag == SchemeTag::SigmaPi3212) {
        const double cc = std::cos(ms.theta) * std::cos(ms.theta);
        f.amplitudes = {-4.0 * std::sqrt(6.0) / (3.0 + cc * cc) * td,
                        -2.0 * std::sqrt(2.0) * (3.0 + cc) / (3.0 + cc * cc) * td};
    } else {
        throw std::invalid_argument("shortcut_type_II: unsupported scheme " + to_string(s.tag));
    }
    return f;
}

// Type III: one field shared between the two adjacent links, plus an
// independent field on the end-to-end link.
inline ShortcutFields shortcut_type_III(const LevelScheme& s, const MixingState& ms) {
    const double c4 = std::cos(4.0 * ms.theta);
    const double s2 = std::sin(2.0 * ms.theta);
    const double td = ms.theta_dot;
    ShortcutFields f;
    f.type = ShortcutType::TypeIII;
    f.groups = type_III_groups(s);
    if (s.tag == SchemeTag::M21) {
        f.amplitudes = {4.0 * std::sqrt(6.0) / (3.0 - c4) * td, 8.0 * s2 / (3.0 - c4) * td};
    } else if (s.tag == SchemeTag::M22) {
        f.amplitudes = {-4.0 * std::sqrt(6.0) / (5.0 + c4) * td, -8.0 * s2 / (5.0 + c4) * td};
    } else {
        throw std::invalid_argument("shortcut_type_III: only M21/M22 have printed formulas");
    }
    return f;
}

// Full prescription H_s = i dW/dt W^dag for a gauge-consistent eigenframe
// path. The result is symmetrized to strip the O(h^2) finite-difference
// asymmetry.
inline Matrix numeric_full_shortcut(const Matrix& w, const Matrix& w_dot) {
    if ((w.adjoint() * w - Matrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("numeric_full_shortcut: W not unitary");
    Matrix hs = I_UNIT * w_dot * w.adjoint();
    return 0.5 * (hs + Matrix(hs.adjoint()));
}

// Reduced shortcut: find real amplitudes on the masked i-phased positions
// such that H_s^dag |phi_0> = -i W dW/dt^dag |phi_0>. The mask turns this
// into a real linear system, solved in the least-squares sense; the residual
// (relative to the RHS norm) is reported, not silently accepted.
inline ShortcutFields numeric_reduced_shortcut(const std::vector<CouplingGroup>& groups,
                                               const Vector& dark, const Vector& rhs_vector) {
    const Eigen::Index n = dark.size();
    const Eigen::Index m = static_cast<Eigen::Index>(groups.size());
    // Each field j contributes (i/2) (e_ab - e_ba) |dark> per masked link.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, m);
    Eigen::VectorXd b(2 * n);
    for (Eigen::Index j = 0; j < m; ++j) {
        Vector col = Vector::Zero(n);
        for (const auto& [p, q] : groups[static_cast<size_t>(j)].links) {
            col(p) += 0.5 * I_UNIT * dark(q);
            col(q) -= 0.5 * I_UNIT * dark(p);
        }
        a.col(j).head(n) = col.real();
        a.col(j).tail(n) = col.imag();
    }
    b.head(n) = rhs_vector.real();
    b.tail(n) = rhs_vector.imag();

    Eigen::VectorXd x = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    ShortcutFields f;
    f.type = ShortcutType::NumericReduced;
    f.groups = groups;
    f.amplitudes.assign(x.data(), x.data() + x.size());
    const double scale = std::max(b.norm(), 1e-300);
    f.residual = (a * x - b).norm() / scale;
    return f;
}

inline ShortcutFields numeric_reduced_shortcut(const std::vector<CouplingGroup>& groups,
                                               const Vector& dark, const Matrix& w,
                                               const Matrix& w_dot) {
    return numeric_reduced_shortcut(groups, dark, Vector(-I_UNIT * (w * w_dot.adjoint() * dark)));
}

// Same solve driven by the dark state alone: -i W dW/dt^dag |phi_0> equals
// i d/dt |phi_0> by completeness, so the full eigenframe is not needed.
inline ShortcutFields numeric_reduced_shortcut_from_dark(const std::vector<CouplingGroup>& groups,
                                                         const Vector& dark,
                                                         const Vector& dark_dot) {
    return numeric_reduced_shortcut(groups, dark, Vector(I_UNIT * dark_dot));
}

// H' = bare + H_s with each shortcut coupling entering as
// (1/2) e^{i phi} (scale) Omega on the upper-triangle position and its
// conjugate below. Defaults phi = pi/2, xi = 1 reproduce the printed
// i-phased matrices exactly.
inline Matrix assemble_total(const Matrix& bare, const ShortcutFields& fields,
                             const ShortcutScheme& scheme) {
    if (fields.groups.size() != fields.amplitudes.size())
        throw std::invalid_argument("assemble_total: field/amplitude size mismatch");
    Matrix h = bare;
    for (size_t j = 0; j < fields.groups.size(); ++j) {
        const CouplingGroup& g = fields.groups[j];
        const double phi = (g.name == scheme.phase_field) ? scheme.phi : M_PI / 2.0;
        const double scale = (g.name == scheme.scale_field) ? scheme.xi : 1.0;
        const Complex v = 0.5 * scale * fields.amplitudes[j] * std::exp(I_UNIT * phi);
        for (const auto& [p, q] : g.links) {
            if (p < 0 || q < 0 || p >= h.rows() || q >= h.cols() || p == q)
                throw std::invalid_argument("assemble_total: coupling position out of range");
            h(p, q) += v;
            h(q, p) += std::conj(v);
        }
    }
    return h;
}

// Analytic shortcut fields for one scheme/type at a given mixing state.
// NumericReduced is handled by the caller (it needs a dark-state path).
inline ShortcutFields analytic_shortcut_fields(const LevelScheme& s, ShortcutType type,
                                               const MixingState& ms) {
    if (s.tag == SchemeTag::ThreeState) return shortcut_three_state(ms);
    switch (type) {
        case ShortcutType::TypeI: return shortcut_type_I(s, ms);
        case ShortcutType::TypeII: return shortcut_type_II(s, ms);
        case ShortcutType::TypeIII: return shortcut_type_III(s, ms);
        default:
            throw std::invalid_argument("analytic_shortcut_fields: no analytic form for " +
                                        to_string(type));
    }
}

}  // namespace mstirap
