#pragma once

// Gaussian pump/Stokes pulse pair and the mixing-angle state derived from it.
// Units: time in T (the pulse width, fixed to 1), frequencies in 1/T, hbar = 1.

#include <cmath>
#include <stdexcept>

namespace mstirap {

// Counterintuitive ordering: for tau > 0 the Stokes pulse (centered at
// -tau/2) precedes the pump pulse (centered at +tau/2).
struct GaussianDrive {
    double peak = 10.0 * std::sqrt(M_PI);  // Omega_0, pulse area = peak * width * sqrt(pi)
    double delay = 1.0;                    // tau
    double width = 1.0;                    // T

    static GaussianDrive from_area(double area, double delay = 1.0, double width = 1.0) {
        if (area <= 0.0) throw std::invalid_argument("GaussianDrive: area must be positive");
        return {area / (width * std::sqrt(M_PI)), delay, width};
    }

    double area() const { return peak * width * std::sqrt(M_PI); }
};

struct DriveSample {
    double omega_p = 0.0;
    double omega_s = 0.0;
    double omega_p_dot = 0.0;
    double omega_s_dot = 0.0;
};

// Field values and exact analytic time derivatives.
inline DriveSample evaluate_drive(const GaussianDrive& d, double t) {
    const double t2 = d.width * d.width;
    const double up = t - d.delay / 2.0;
    const double us = t + d.delay / 2.0;
    DriveSample s;
    s.omega_p = d.peak * std::exp(-up * up / t2);
    s.omega_s = d.peak * std::exp(-us * us / t2);
    s.omega_p_dot = s.omega_p * (-2.0 * up / t2);
    s.omega_s_dot = s.omega_s * (-2.0 * us / t2);
    return s;
}

struct MixingState {
    double theta = 0.0;      // arctan(Omega_P / Omega_S), in [0, pi/2]
    double theta_dot = 0.0;  // 1/T
    double rms = 0.0;        // Lambda = sqrt(Omega_P^2 + Omega_S^2)
    double t = 0.0;
};

inline MixingState mixing_state(const DriveSample& s, double t = 0.0) {
    const double lambda2 = s.omega_p * s.omega_p + s.omega_s * s.omega_s;
    if (lambda2 <= 0.0)
        throw std::domain_error("mixing_state: both fields zero, angle undefined");
    MixingState ms;
    ms.theta = std::atan2(s.omega_p, s.omega_s);
    ms.theta_dot = (s.omega_p_dot * s.omega_s - s.omega_p * s.omega_s_dot) / lambda2;
    ms.rms = std::sqrt(lambda2);
    ms.t = t;
    return ms;
}

inline MixingState mixing_state(const GaussianDrive& d, double t) {
    return mixing_state(evaluate_drive(d, t), t);
}

}  // namespace mstirap
