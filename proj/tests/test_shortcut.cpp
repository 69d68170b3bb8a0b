#include <catch2/catch_amalgamated.hpp>
#include <mstirap/shortcut.hpp>

using namespace mstirap;

namespace {
MixingState at(double theta, double theta_dot = 1.0) {
    MixingState ms;
    ms.theta = theta;
    ms.theta_dot = theta_dot;
    ms.rms = 1.0;
    return ms;
}
}  // namespace

TEST_CASE("three-state shortcut is exactly twice the mixing-angle rate") {
    const ShortcutFields f = shortcut_three_state(at(0.4, 0.37));
    REQUIRE(f.amplitudes.size() == 1);
    CHECK(f.amplitudes[0] == Catch::Approx(2.0 * 0.37).margin(1e-15));
    CHECK(f.groups[0].links == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("type-I fields at theta = 0") {
    const LevelScheme m21 = LevelScheme::make(SchemeTag::M21);
    const ShortcutFields f21 = shortcut_type_I(m21, at(0.0));
    REQUIRE(f21.amplitudes.size() == 4);
    CHECK(f21.amplitudes[0] == Catch::Approx(2.0 * std::sqrt(6.0)).margin(1e-13));
    CHECK(f21.amplitudes[1] == Catch::Approx(0.4 * std::sqrt(6.0)).margin(1e-13));
    CHECK(f21.amplitudes[2] == Catch::Approx(0.0).margin(1e-13));
    CHECK(f21.amplitudes[3] == Catch::Approx(0.4).margin(1e-13));

    const LevelScheme m22 = LevelScheme::make(SchemeTag::M22);
    const ShortcutFields f22 = shortcut_type_I(m22, at(0.0));
    CHECK(f22.amplitudes[0] == Catch::Approx(-2.0 / 3.0 * std::sqrt(6.0)).margin(1e-13));
    CHECK(f22.amplitudes[1] == Catch::Approx(2.0 * std::sqrt(6.0)).margin(1e-13));
    CHECK(f22.amplitudes[2] == Catch::Approx(0.0).margin(1e-13));
    CHECK(f22.amplitudes[3] == Catch::Approx(6.0).margin(1e-13));
}

TEST_CASE("type-II fields are mirror partners around theta = pi/4") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        const double d = 0.31;
        const ShortcutFields lo = shortcut_type_II(s, at(M_PI / 4.0 - d));
        const ShortcutFields hi = shortcut_type_II(s, at(M_PI / 4.0 + d));
        CHECK(lo.amplitudes[0] == Catch::Approx(hi.amplitudes[1]).margin(1e-13));
        CHECK(lo.amplitudes[1] == Catch::Approx(hi.amplitudes[0]).margin(1e-13));
    }
}

TEST_CASE("numeric full prescription reproduces the type-I fields") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        auto h_of = [&](double theta) {
            return build_hamiltonian(s, std::sin(theta), std::cos(theta));
        };
        GaugeChain chain;
        const double theta = 0.7;
        chain.advance(h_of(theta - 0.01));
        auto [frame, w_dot] = chain.advance_with_derivative(h_of, theta);
        const Matrix hs = numeric_full_shortcut(frame.vectors, w_dot);
        const ShortcutFields an = shortcut_type_I(s, at(theta));
        for (size_t j = 0; j < an.groups.size(); ++j)
            for (const auto& [p, q] : an.groups[j].links)
                CHECK(2.0 * hs(p, q).imag() == Catch::Approx(an.amplitudes[j]).margin(1e-8));
    }
}

TEST_CASE("numeric reduced solver reproduces type II and type III") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        const double theta = 0.9, h = 1e-6;
        const Vector dark = dark_state(s, theta);
        const Vector dark_dot =
            (Vector(dark_state(s, theta + h)) - Vector(dark_state(s, theta - h))) / (2.0 * h);
        for (ShortcutType type : {ShortcutType::TypeII, ShortcutType::TypeIII}) {
            const ShortcutFields an = analytic_shortcut_fields(s, type, at(theta));
            const ShortcutFields num =
                numeric_reduced_shortcut_from_dark(an.groups, dark, dark_dot);
            CHECK(num.residual < 1e-8);
            for (size_t j = 0; j < an.amplitudes.size(); ++j)
                CHECK(num.amplitudes[j] == Catch::Approx(an.amplitudes[j]).margin(1e-6));
        }
    }
}

TEST_CASE("the two reduced-solver entry points agree") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    auto h_of = [&](double theta) {
        return build_hamiltonian(s, std::sin(theta), std::cos(theta));
    };
    GaugeChain chain;
    const double theta = 0.55;
    chain.advance(h_of(theta - 0.01));
    auto [frame, w_dot] = chain.advance_with_derivative(h_of, theta);
    const Vector dark = frame.vectors.col(s.dark_index());
    const Vector dark_dot = w_dot.col(s.dark_index());
    const auto groups = type_II_groups(s);
    const ShortcutFields a = numeric_reduced_shortcut(groups, dark, frame.vectors, w_dot);
    const ShortcutFields b = numeric_reduced_shortcut_from_dark(groups, dark, dark_dot);
    REQUIRE(a.amplitudes.size() == b.amplitudes.size());
    for (size_t j = 0; j < a.amplitudes.size(); ++j)
        CHECK(a.amplitudes[j] == Catch::Approx(b.amplitudes[j]).margin(1e-9));
}

TEST_CASE("assemble_total applies the i-phase, knobs, and hermiticity") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const Matrix bare = build_hamiltonian(s, 0.6, 0.8);
    const ShortcutFields f = shortcut_type_II(s, at(0.6443, 0.5));
    ShortcutScheme ideal;
    ideal.type = ShortcutType::TypeII;
    const Matrix h = assemble_total(bare, f, ideal);
    CHECK(hermiticity_defect(h) < 1e-14);
    // ideal phase pi/2 puts the shortcut on the imaginary part only
    CHECK(h(0, 2).imag() == Catch::Approx(0.5 * f.amplitude("Omega_-2,0")).margin(1e-14));
    CHECK(h(2, 4).imag() == Catch::Approx(0.5 * f.amplitude("Omega_0,2")).margin(1e-14));

    ShortcutScheme knobs = ideal;
    knobs.phi = 0.0;  // phase knob acts on Omega_0,2 only
    knobs.xi = 2.0;   // scale knob acts on Omega_-2,0 only
    const Matrix g = assemble_total(bare, f, knobs);
    CHECK(g(2, 4).imag() == Catch::Approx(0.0).margin(1e-14));
    CHECK(g(2, 4).real() - bare(2, 4).real() ==
          Catch::Approx(0.5 * f.amplitude("Omega_0,2")).margin(1e-14));
    CHECK(g(0, 2).imag() == Catch::Approx(1.0 * f.amplitude("Omega_-2,0")).margin(1e-14));
}

TEST_CASE("shortcut types round-trip through strings") {
    for (ShortcutType t : {ShortcutType::None, ShortcutType::TypeI, ShortcutType::TypeII,
                           ShortcutType::TypeIII, ShortcutType::NumericReduced})
        CHECK(shortcut_type_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(shortcut_type_from_string("type4"), std::invalid_argument);
}
