#pragma once

// Dense complex linear algebra for small (N <= 9) Hermitian problems:
// eigendecomposition with deterministic ordering, gauge-continuous
// eigenbasis tracking, and exact-unitary time stepping.

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>

namespace mstirap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr Complex I_UNIT{0.0, 1.0};

struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct singular_point_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instantaneous eigenbasis of a Hermitian operator.
// `vectors` is unitary with eigenvector columns; `eigenvalues` follow the
// column order (ascending from eig_hermitian, possibly permuted after
// gauge_align). `aux` carries the r/s auxiliary of the analytic M-system
// spectra when available.
struct EigenFrame {
    Eigen::VectorXd eigenvalues;
    Matrix vectors;
    std::optional<double> aux;
};

inline double hermiticity_defect(const Matrix& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const Matrix& h, const char* who) {
    if (h.rows() != h.cols())
        throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (hermiticity_defect(h) > 1e-10)
        throw std::invalid_argument(std::string(who) + ": input not Hermitian");
}

// Make the largest-magnitude component of each column real positive.
// Ties resolve to the lowest index, so the result is deterministic.
inline void fix_column_gauge(Matrix& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double a = std::abs(vectors(i, j));
            if (a > best + 1e-15) {
                best = a;
                imax = i;
            }
        }
        const Complex z = vectors(imax, j);
        if (std::abs(z) > 0.0) vectors.col(j) *= std::conj(z) / std::abs(z);
    }
}

// Hermitian eigendecomposition, eigenvalues ascending, deterministic.
inline EigenFrame eig_hermitian(const Matrix& h) {
    require_hermitian(h, "eig_hermitian");
    if (h.rows() > 9)
        throw std::invalid_argument("eig_hermitian: dimension exceeds 9");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: solver failed");
    EigenFrame frame;
    frame.eigenvalues = solver.eigenvalues();
    frame.vectors = solver.eigenvectors();
    return frame;
}

// Match `curr` columns to `prev` by maximal overlap and remove the relative
// phase so that <prev_k|curr_k> is real positive. Column order follows the
// ordering of `prev`, not the eigenvalue order of `curr`.
inline EigenFrame gauge_align(const EigenFrame& prev, const EigenFrame& curr) {
    const Eigen::Index n = prev.vectors.cols();
    if (curr.vectors.cols() != n || curr.vectors.rows() != prev.vectors.rows())
        throw std::invalid_argument("gauge_align: frame dimensions differ");
    const Matrix overlap = prev.vectors.adjoint() * curr.vectors;

    EigenFrame out;
    out.eigenvalues.resize(n);
    out.vectors.resize(prev.vectors.rows(), n);
    out.aux = curr.aux;

    std::vector<bool> taken(static_cast<size_t>(n), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index imax = -1;
        double best = -1.0, second = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::abs(overlap(i, j));
            if (a > best) {
                second = best;
                best = a;
                imax = i;
            } else if (a > second) {
                second = a;
            }
        }
        if (best - second < 1e-6)
            throw degeneracy_error("gauge_align: ambiguous column matching");
        if (taken[static_cast<size_t>(imax)])
            throw degeneracy_error("gauge_align: two columns map to one target");
        taken[static_cast<size_t>(imax)] = true;

        const Complex z = overlap(imax, j);
        const Complex phase = std::abs(z) > 0.0 ? std::conj(z) / std::abs(z) : Complex{1.0, 0.0};
        out.vectors.col(imax) = curr.vectors.col(j) * phase;
        out.eigenvalues(imax) = curr.eigenvalues(j);
    }
    return out;
}

// One exact-unitary step: c' = exp(-i H dt) c via eigendecomposition.
inline Vector unitary_step(const Matrix& h_mid, double dt, const Vector& c) {
    const EigenFrame frame = eig_hermitian(h_mid);
    Vector a = frame.vectors.adjoint() * c;
    for (Eigen::Index k = 0; k < a.size(); ++k)
        a(k) *= std::exp(-I_UNIT * frame.eigenvalues(k) * dt);
    return frame.vectors * a;
}

// Gauge-continuous eigenframe tracking along a Hamiltonian path.
// The first frame gets the largest-component-real-positive gauge; later
// frames are aligned to the most recent accepted frame.
class GaugeChain {
  public:
    EigenFrame advance(const Matrix& h) {
        EigenFrame frame = eig_hermitian(h);
        if (ref_) {
            frame = gauge_align(*ref_, frame);
        } else {
            fix_column_gauge(frame.vectors);
        }
        ref_ = frame;
        return frame;
    }

    // Frame at `h(t)` plus its gauge-consistent time derivative from a
    // 4th-order central stencil; the accepted reference moves to t.
    // The step balances truncation against roundoff cancellation, keeping
    // the derivative noise near 1e-12 on O(1) paths.
    template <typename HamiltonianFn>
    std::pair<EigenFrame, Matrix> advance_with_derivative(HamiltonianFn&& h_of_t, double t,
                                                          double step = 1e-4) {
        EigenFrame frame = advance(h_of_t(t));
        auto at = [&](double tt) { return gauge_align(frame, eig_hermitian(h_of_t(tt))).vectors; };
        Matrix w_dot = (8.0 * (at(t + step) - at(t - step)) - (at(t + 2 * step) - at(t - 2 * step))) /
                       (12.0 * step);
        return {std::move(frame), std::move(w_dot)};
    }

    void reset() { ref_.reset(); }
    const std::optional<EigenFrame>& reference() const { return ref_; }

  private:
    std::optional<EigenFrame> ref_;
};

}  // namespace mstirap
