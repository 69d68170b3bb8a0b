#include <catch2/catch_amalgamated.hpp>
#include <mstirap/verify.hpp>

using namespace mstirap;

TEST_CASE("spectrum and dark-state oracles agree at tight tolerance") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        CHECK(spectrum_equivalence_error(s, 200) < 1e-12);
        CHECK(dark_nullity_error(s, 200) < 1e-12);
    }
}

TEST_CASE("analytic NACs match the finite-difference oracle") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        CHECK(nac_equivalence_excess(s, GaussianDrive{}, 120) < 1.0);
    }
}

TEST_CASE("dark-row cancellation holds for the reduced shortcut types") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22}) {
        const LevelScheme s = LevelScheme::make(tag);
        for (ShortcutType type : {ShortcutType::TypeII, ShortcutType::TypeIII})
            CHECK(cancellation_error(s, GaussianDrive{}, ShortcutScheme{type}, 300, true) < 1e-8);
    }
}

TEST_CASE("shortcut mirror symmetry relates the two type-II fields") {
    for (SchemeTag tag : {SchemeTag::M21, SchemeTag::M22})
        CHECK(mirror_symmetry_error(LevelScheme::make(tag), GaussianDrive{}) < 1e-12);
}

TEST_CASE("sigma-pi comparison report carries both field deviations") {
    const SigmaPiReport report = sigma_pi_comparison(SchemeTag::SigmaPi22, 60);
    CHECK(report.max_relative_deviation < 1e-6);
    CHECK(report.detail.find("Omega_0,1") != std::string::npos);
    CHECK(report.detail.find("Omega_1,2") != std::string::npos);
}

TEST_CASE("the full verification suite passes") {
    for (const CheckResult& r : run_verification_suite()) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.pass);
    }
}
