#include <catch2/catch_amalgamated.hpp>
#include <mstirap/propagate.hpp>

using namespace mstirap;

TEST_CASE("propagation conserves the norm") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const GaussianDrive d{};
    const TrajectoryResult tr = propagate(s, d, ShortcutScheme{}, PropagationConfig{});
    for (const Vector& c : tr.amplitudes) CHECK(std::abs(c.norm() - 1.0) < 1e-10);
}

TEST_CASE("bare STIRAP on the M21 chain stalls near 80 percent") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const double p = transfer_efficiency(propagate(s, GaussianDrive{}, ShortcutScheme{},
                                                   PropagationConfig{}));
    CHECK(p > 0.77);
    CHECK(p < 0.83);
}

TEST_CASE("type-II shortcuts push the M21 transfer to unity") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const double p = transfer_efficiency(propagate(s, GaussianDrive{},
                                                   ShortcutScheme{ShortcutType::TypeII},
                                                   PropagationConfig{}));
    CHECK(1.0 - p < 1e-6);
}

TEST_CASE("the three-state shortcut is exact even at small areas") {
    const LevelScheme s = LevelScheme::make(SchemeTag::ThreeState);
    const GaussianDrive d = GaussianDrive::from_area(M_PI);
    const double p = transfer_efficiency(propagate(s, d, ShortcutScheme{ShortcutType::TypeII},
                                                   PropagationConfig{}));
    CHECK(1.0 - p < 1e-8);
}

TEST_CASE("numeric reduced shortcut drives the sigma-pi chains") {
    for (SchemeTag tag : {SchemeTag::SigmaPi22, SchemeTag::SigmaPi3212}) {
        const LevelScheme s = LevelScheme::make(tag);
        const double p = transfer_efficiency(propagate(
            s, GaussianDrive{}, ShortcutScheme{ShortcutType::NumericReduced},
            PropagationConfig{}));
        CHECK(1.0 - p < 1e-6);
    }
}

TEST_CASE("both steppers converge to the same final populations") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    PropagationConfig cf4;
    PropagationConfig midpoint;
    midpoint.stepper = Stepper::ExponentialMidpoint;
    midpoint.steps = 32768;
    const double a = transfer_efficiency(propagate(s, GaussianDrive{}, ShortcutScheme{}, cf4));
    const double b = transfer_efficiency(propagate(s, GaussianDrive{}, ShortcutScheme{}, midpoint));
    CHECK(a == Catch::Approx(b).margin(1e-7));
}

TEST_CASE("adiabatic projection holds the dark state under shortcuts") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const GaussianDrive d{};
    const TrajectoryResult tr =
        propagate(s, d, ShortcutScheme{ShortcutType::TypeII}, PropagationConfig{});
    const AdiabaticHistory ad = adiabatic_projection(tr, s, d);
    double max_dev = 0.0;
    for (size_t i = 0; i < ad.populations.size(); ++i) {
        if (!ad.valid[i]) continue;
        max_dev = std::max(max_dev, std::abs(ad.populations[i][s.dark_index()] - 1.0));
    }
    CHECK(max_dev < 1e-4);
}

TEST_CASE("the adiabatic-frame Hamiltonian is diagonal under type-I shortcuts") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const GaussianDrive d{};
    const Matrix ha = adiabatic_frame_hamiltonian(s, d, ShortcutScheme{ShortcutType::TypeI}, 0.3);
    double off = 0.0;
    for (int p = 0; p < s.dim; ++p)
        for (int q = 0; q < s.dim; ++q)
            if (p != q) off = std::max(off, std::abs(ha(p, q)));
    CHECK(off < 1e-7);
}

TEST_CASE("invalid configurations are rejected with clear errors") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    PropagationConfig bad;
    bad.steps = 0;
    CHECK_THROWS_AS(propagate(s, GaussianDrive{}, ShortcutScheme{}, bad),
                    std::invalid_argument);
    bad = PropagationConfig{};
    bad.t_end = bad.t_start;
    CHECK_THROWS_AS(propagate(s, GaussianDrive{}, ShortcutScheme{}, bad),
                    std::invalid_argument);
}
