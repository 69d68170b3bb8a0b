#pragma once

// Chainwise level schemes: Clebsch-Gordan tables, bare Hamiltonians, and the
// analytic ground truth (spectra, dark states, nonadiabatic couplings) for
// the five-state M-systems and the three-state chain.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstirap/drive.hpp"
#include "mstirap/linalg.hpp"

namespace mstirap {

enum class SchemeTag { ThreeState, M21, M22, SigmaPi22, SigmaPi3212, GenericChain };

inline std::string to_string(SchemeTag tag) {
    switch (tag) {
        case SchemeTag::ThreeState: return "three-state";
        case SchemeTag::M21: return "m21";
        case SchemeTag::M22: return "m22";
        case SchemeTag::SigmaPi22: return "sigma-pi-2-2";
        case SchemeTag::SigmaPi3212: return "sigma-pi-3/2-1/2";
        case SchemeTag::GenericChain: return "generic-chain";
    }
    return "unknown";
}

// Odd chain of states. cg[k] is the signed Clebsch-Gordan coefficient of
// link k (states k and k+1); pump_link[k] selects whether that link is
// multiplied by Omega_P or Omega_S.
struct LevelScheme {
    SchemeTag tag = SchemeTag::ThreeState;
    int dim = 3;
    std::vector<double> cg;
    std::vector<bool> pump_link;

    static LevelScheme make(SchemeTag tag) {
        LevelScheme s;
        s.tag = tag;
        switch (tag) {
            case SchemeTag::ThreeState:
                s.dim = 3;
                s.cg = {1.0, 1.0};
                break;
            case SchemeTag::M21:
                s.dim = 5;
                s.cg = {std::sqrt(3.0 / 5.0), std::sqrt(1.0 / 10.0), std::sqrt(1.0 / 10.0),
                        std::sqrt(3.0 / 5.0)};
                break;
            case SchemeTag::M22:
                s.dim = 5;
                s.cg = {-std::sqrt(1.0 / 3.0), std::sqrt(1.0 / 2.0), -std::sqrt(1.0 / 2.0),
                        std::sqrt(1.0 / 3.0)};
                break;
            case SchemeTag::SigmaPi22:
                // m_g=0 -> m_e=1 -> m_g=1 -> m_e=2 -> m_g=2, sigma+ pump / pi Stokes
                s.dim = 5;
                s.cg = {std::sqrt(1.0 / 2.0), std::sqrt(1.0 / 6.0), std::sqrt(1.0 / 3.0),
                        std::sqrt(2.0 / 3.0)};
                break;
            case SchemeTag::SigmaPi3212:
                // m_g=-3/2 -> m_e=-1/2 -> m_g=-1/2 -> m_e=1/2 -> m_g=1/2
                s.dim = 5;
                s.cg = {std::sqrt(1.0 / 2.0), -std::sqrt(1.0 / 3.0), std::sqrt(1.0 / 6.0),
                        -std::sqrt(1.0 / 3.0)};
                break;
            case SchemeTag::GenericChain:
                throw std::invalid_argument("LevelScheme: generic chains need explicit coefficients");
        }
        // All built-in chains alternate pump, Stokes, pump, Stokes.
        for (size_t k = 0; k < s.cg.size(); ++k) s.pump_link.push_back(k % 2 == 0);
        return s;
    }

    static LevelScheme generic(std::vector<double> cg, std::vector<bool> pump_link) {
        if (cg.empty() || cg.size() != pump_link.size())
            throw std::invalid_argument("LevelScheme: coefficient/parity size mismatch");
        if (cg.size() % 2 != 0)
            throw std::invalid_argument("LevelScheme: resonant STIRAP chains need odd length");
        LevelScheme s;
        s.tag = SchemeTag::GenericChain;
        s.dim = static_cast<int>(cg.size()) + 1;
        s.cg = std::move(cg);
        s.pump_link = std::move(pump_link);
        return s;
    }

    // The chain index of the zero-eigenvalue adiabatic state in ascending
    // eigenvalue order (middle of the symmetric spectrum).
    int dark_index() const { return (dim - 1) / 2; }
};

inline SchemeTag scheme_tag_from_string(const std::string& name) {
    if (name == "three" || name == "three-state" || name == "3") return SchemeTag::ThreeState;
    if (name == "m21") return SchemeTag::M21;
    if (name == "m22") return SchemeTag::M22;
    if (name == "sp22" || name == "sigma-pi-22" || name == "sigma-pi-2-2")
        return SchemeTag::SigmaPi22;
    if (name == "sp3212" || name == "sigma-pi-3212" || name == "sigma-pi-3/2-1/2")
        return SchemeTag::SigmaPi3212;
    throw std::invalid_argument("unknown scheme tag '" + name + "'");
}

// Tridiagonal real symmetric bare Hamiltonian at full resonance:
// element (k, k+1) = (1/2) cg_k (Omega_P or Omega_S per link parity).
inline Matrix build_hamiltonian(const LevelScheme& s, double omega_p, double omega_s) {
    Matrix h = Matrix::Zero(s.dim, s.dim);
    for (int k = 0; k + 1 < s.dim; ++k) {
        const double field = s.pump_link[static_cast<size_t>(k)] ? omega_p : omega_s;
        const double v = 0.5 * s.cg[static_cast<size_t>(k)] * field;
        h(k, k + 1) = v;
        h(k + 1, k) = v;
    }
    return h;
}

// Analytic five-state spectrum, ascending: (-+, --, 0, +-, ++).
struct MSpectrum {
    std::array<double, 5> values{};
    double aux = 0.0;  // r for M21, s for M22
};

inline MSpectrum analytic_spectrum(const LevelScheme& s, double theta, double rms) {
    MSpectrum out;
    const double c4 = std::cos(4.0 * theta);
    if (s.tag == SchemeTag::M21) {
        const double r = std::sqrt(13.0 + 12.0 * c4);
        out.aux = r;
        const double lo = rms * std::sqrt(7.0 - r) / (4.0 * std::sqrt(5.0));
        const double hi = rms * std::sqrt(7.0 + r) / (4.0 * std::sqrt(5.0));
        out.values = {-hi, -lo, 0.0, lo, hi};
    } else if (s.tag == SchemeTag::M22) {
        const double sv = std::sqrt(5.0 - 4.0 * c4);
        out.aux = sv;
        const double lo = rms * std::sqrt(5.0 - sv) / (4.0 * std::sqrt(3.0));
        const double hi = rms * std::sqrt(5.0 + sv) / (4.0 * std::sqrt(3.0));
        out.values = {-hi, -lo, 0.0, lo, hi};
    } else {
        throw std::invalid_argument("analytic_spectrum: only M21/M22 have printed spectra");
    }
    return out;
}

// Printed dark states (real entries, zero on the excited sublevels).
inline Vector dark_state(const LevelScheme& s, double theta) {
    const double c = std::cos(theta), si = std::sin(theta);
    Vector v;
    if (s.tag == SchemeTag::ThreeState) {
        v.resize(3);
        v << c, 0.0, -si;
    } else if (s.tag == SchemeTag::M21) {
        const double denom = std::sqrt(3.0 - std::cos(4.0 * theta));
        v.resize(5);
        v << std::sqrt(2.0) * c * c, 0.0, -std::sqrt(3.0) * std::sin(2.0 * theta), 0.0,
            std::sqrt(2.0) * si * si;
        v /= denom;
    } else if (s.tag == SchemeTag::M22) {
        const double denom = std::sqrt(5.0 + std::cos(4.0 * theta));
        v.resize(5);
        v << std::sqrt(6.0) * c * c, 0.0, std::sin(2.0 * theta), 0.0, std::sqrt(6.0) * si * si;
        v /= denom;
    } else {
        throw std::invalid_argument("dark_state: no printed form for scheme " + to_string(s.tag));
    }
    return v;
}

// Numeric dark state: the zero-eigenvalue eigenvector (kernel of H), with the
// largest-magnitude component made real positive. Works for any odd chain.
inline Vector dark_state_numeric(const LevelScheme& s, double omega_p, double omega_s) {
    EigenFrame frame = eig_hermitian(build_hamiltonian(s, omega_p, omega_s));
    fix_column_gauge(frame.vectors);
    return frame.vectors.col(s.dark_index());
}

// Nonadiabatic couplings chi_xy = -i <phi_xy | d/dt phi_0> between the dark
// state and the other four adiabatic states, purely imaginary, with the
// printed pairwise equalities chi_-- = chi_+- and chi_++ = chi_-+.
struct NacValues {
    Complex mm, pm, pp, mp;
};

inline NacValues analytic_nac(const LevelScheme& s, double theta, double theta_dot) {
    const double c = std::cos(theta);
    const double c2 = std::cos(2.0 * theta);
    const double c4 = std::cos(4.0 * theta);
    double lower = 0.0, upper = 0.0, rad_lower = 0.0, rad_upper = 0.0;
    if (s.tag == SchemeTag::M21) {
        const double r = std::sqrt(13.0 + 12.0 * c4);
        rad_lower = (3.0 - c4) * (7.0 - r) * (r * r + 5.0 * r * c2);
        rad_upper = (3.0 - c4) * (7.0 + r) * (r * r - 5.0 * r * c2);
        lower = std::sqrt(6.0) * (1.0 + 4.0 * c2 + r) * c;
        upper = std::sqrt(6.0) * (1.0 + 4.0 * c2 - r) * c;
    } else if (s.tag == SchemeTag::M22) {
        const double sv = std::sqrt(5.0 - 4.0 * c4);
        rad_lower = (5.0 + c4) * (5.0 - sv) * (sv * sv - sv * c2);
        rad_upper = (5.0 + c4) * (5.0 + sv) * (sv * sv + sv * c2);
        lower = std::sqrt(6.0) * (3.0 - 4.0 * c2 + sv) * c;
        upper = std::sqrt(6.0) * (3.0 - 4.0 * c2 - sv) * c;
    } else {
        throw std::invalid_argument("analytic_nac: only M21/M22 have printed couplings");
    }
    if (rad_lower < 1e-12 || rad_upper < 1e-12)
        throw singular_point_error("analytic_nac: denominator radicand vanishes");
    NacValues nac;
    nac.mm = nac.pm = -I_UNIT * lower / std::sqrt(rad_lower) * theta_dot;
    nac.pp = nac.mp = -I_UNIT * upper / std::sqrt(rad_upper) * theta_dot;
    return nac;
}

}  // namespace mstirap
