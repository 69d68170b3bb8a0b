#include <catch2/catch_amalgamated.hpp>
#include <mstirap/scheme.hpp>

using namespace mstirap;

TEST_CASE("coupling tables carry the tabulated coefficients") {
    const LevelScheme m21 = LevelScheme::make(SchemeTag::M21);
    CHECK(m21.dim == 5);
    CHECK(m21.cg[0] == Catch::Approx(std::sqrt(3.0 / 5.0)).margin(1e-15));
    CHECK(m21.cg[1] == Catch::Approx(std::sqrt(1.0 / 10.0)).margin(1e-15));
    CHECK(m21.cg[2] == Catch::Approx(std::sqrt(1.0 / 10.0)).margin(1e-15));
    CHECK(m21.cg[3] == Catch::Approx(std::sqrt(3.0 / 5.0)).margin(1e-15));

    const LevelScheme m22 = LevelScheme::make(SchemeTag::M22);
    CHECK(m22.cg[0] == Catch::Approx(-std::sqrt(1.0 / 3.0)).margin(1e-15));
    CHECK(m22.cg[1] == Catch::Approx(std::sqrt(1.0 / 2.0)).margin(1e-15));
    CHECK(m22.cg[2] == Catch::Approx(-std::sqrt(1.0 / 2.0)).margin(1e-15));
    CHECK(m22.cg[3] == Catch::Approx(std::sqrt(1.0 / 3.0)).margin(1e-15));

    // links alternate pump, Stokes, pump, Stokes
    for (int k = 0; k < 4; ++k) CHECK(m21.pump_link[k] == (k % 2 == 0));
}

TEST_CASE("build_hamiltonian is tridiagonal with half-coupling elements") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const double op = 0.8, os = 1.7;
    const Matrix h = build_hamiltonian(s, op, os);
    for (int k = 0; k + 1 < s.dim; ++k) {
        const double field = s.pump_link[k] ? op : os;
        CHECK(h(k, k + 1).real() == Catch::Approx(0.5 * s.cg[k] * field).margin(1e-15));
        CHECK(h(k + 1, k) == std::conj(h(k, k + 1)));
    }
    CHECK(h.diagonal().cwiseAbs().maxCoeff() < 1e-15);
    CHECK((h(0, 2) == Complex{}));
}

TEST_CASE("analytic spectrum matches numeric diagonalization") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        for (double theta : {0.1, 0.6, M_PI / 4.0, 1.3}) {
            const double rms = 2.4;
            const MSpectrum an = analytic_spectrum(s, theta, rms);
            const EigenFrame f =
                eig_hermitian(build_hamiltonian(s, rms * std::sin(theta), rms * std::cos(theta)));
            for (int k = 0; k < 5; ++k)
                CHECK(f.eigenvalues(k) == Catch::Approx(an.values[k]).margin(1e-12 * rms));
        }
    }
}

TEST_CASE("printed dark states are normalized kernel vectors") {
    for (SchemeTag tag : {SchemeTag::ThreeState, SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        for (double theta : {0.05, 0.7, 1.4}) {
            const Vector v = dark_state(s, theta);
            CHECK(v.norm() == Catch::Approx(1.0).margin(1e-14));
            const Matrix h = build_hamiltonian(s, std::sin(theta), std::cos(theta));
            CHECK((h * v).norm() < 1e-14);
        }
    }
}

TEST_CASE("dark state endpoints move population across the chain") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const Vector start = dark_state(s, 0.0);
    const Vector end = dark_state(s, M_PI / 2.0);
    CHECK(std::abs(start(0)) == Catch::Approx(1.0).margin(1e-14));
    CHECK(std::abs(end(4)) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("numeric dark state agrees with the printed form") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        for (double theta : {0.3, 0.9}) {
            const Vector printed = dark_state(s, theta);
            Vector numeric = dark_state_numeric(s, std::sin(theta), std::cos(theta));
            // match overall sign to the printed convention
            if (printed.dot(numeric).real() < 0.0) numeric = -numeric;
            CHECK((printed - numeric).norm() < 1e-12);
        }
    }
}

TEST_CASE("analytic NACs keep the printed pairwise equalities") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        const NacValues nac = analytic_nac(s, 0.6, 0.8);
        CHECK(nac.mm == nac.pm);
        CHECK(nac.pp == nac.mp);
        CHECK(std::abs(nac.mm.real()) < 1e-15);  // purely imaginary
        CHECK(std::abs(nac.pp.real()) < 1e-15);
    }
}

TEST_CASE("NACs scale linearly in theta_dot") {
    const LevelScheme s = LevelScheme::make(SchemeTag::M21);
    const NacValues a = analytic_nac(s, 0.5, 1.0);
    const NacValues b = analytic_nac(s, 0.5, 2.5);
    CHECK(b.mm.imag() == Catch::Approx(2.5 * a.mm.imag()).margin(1e-14));
    CHECK(b.pp.imag() == Catch::Approx(2.5 * a.pp.imag()).margin(1e-14));
}

TEST_CASE("generic chains accept custom coefficient tables") {
    const LevelScheme chain =
        LevelScheme::generic({1.0, 0.5, 0.5, 1.0}, {true, false, true, false});
    CHECK(chain.dim == 5);
    CHECK(chain.dark_index() == 2);
    CHECK_NOTHROW(build_hamiltonian(chain, 1.0, 1.0));
}

TEST_CASE("scheme tags round-trip through strings") {
    for (SchemeTag tag : {SchemeTag::ThreeState, SchemeTag::M21, SchemeTag::M22,
                          SchemeTag::SigmaPi22, SchemeTag::SigmaPi3212})
        CHECK(scheme_tag_from_string(to_string(tag)) == tag);
    CHECK_THROWS_AS(scheme_tag_from_string("m23"), std::invalid_argument);
}
