#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "levyarc/common.hpp"
#include "levyarc/levy_exponent.hpp"
#include "levyarc/verify.hpp"

namespace {

const levyarc::SubTest* find_sub(const levyarc::IdentityReport& r, const std::string& label) {
    for (const levyarc::SubTest& s : r.subtests)
        if (s.label == label) return &s;
    return nullptr;
}

bool has_note_containing(const levyarc::IdentityReport& r, const std::string& needle) {
    return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& n) {
        return n.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("main theorem check passes for the symmetric brownian oracle") {
    const levyarc::CharExponent psi = levyarc::brownian(-0.25, 1.0);
    const levyarc::IdentityReport r =
        levyarc::check_main_theorem(psi, levyarc::Method::oracle, 20000, 404);

    CHECK(r.identity == "main-theorem");
    CHECK(r.params.at("rho") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.verdict == levyarc::Verdict::pass);
    CHECK(r.p_value >= 1e-3);
    CHECK(r.mellin_checks.size() == 5);
    for (const levyarc::MellinCheck& m : r.mellin_checks) CHECK(m.sigma_distance <= 4.0);

    const levyarc::SubTest* comp = find_sub(r, "complementarity-identical");
    REQUIRE(comp != nullptr);
    CHECK(comp->pass);
    CHECK(comp->statistic <= 1e-10);

    const levyarc::SubTest* scale = find_sub(r, "scale-invariance-bitwise");
    REQUIRE(scale != nullptr);
    CHECK(scale->pass);
    CHECK(scale->statistic == 0.0);
}

TEST_CASE("main theorem check passes for an asymmetric brownian exponent on paths") {
    const levyarc::CharExponent psi = levyarc::brownian(-0.15, 1.0);
    const levyarc::IdentityReport r =
        levyarc::check_main_theorem(psi, levyarc::Method::paths, 2000, 91);

    CHECK(r.params.at("rho") == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(r.verdict == levyarc::Verdict::pass);
    REQUIRE(find_sub(r, "pareto-ratio") != nullptr);
    CHECK(find_sub(r, "pareto-ratio")->pass);
}

TEST_CASE("main theorem check is inconclusive when the root leaves the unit interval") {
    const levyarc::CharExponent psi = levyarc::brownian(-0.75, 1.0);
    const levyarc::IdentityReport r =
        levyarc::check_main_theorem(psi, levyarc::Method::oracle, 1000, 5);
    CHECK(r.verdict == levyarc::Verdict::inconclusive);
    CHECK(r.subtests.empty());
    CHECK(r.params.at("rho") == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("main theorem check rejects a mismatched reference law") {
    const levyarc::CharExponent psi = levyarc::brownian(-0.25, 1.0);
    const levyarc::IdentityReport r =
        levyarc::check_main_theorem(psi, levyarc::Method::oracle, 20000, 404, 0.7);
    CHECK(r.verdict == levyarc::Verdict::fail);
    CHECK(r.p_value < 1e-4);
    CHECK(r.params.at("reference_rho") == 0.7);
}

TEST_CASE("main theorem oracle method refuses non-brownian exponents") {
    const levyarc::CharExponent psi = levyarc::lamperti_stable(0.8, 0.4);
    CHECK_THROWS_AS(
        (void)levyarc::check_main_theorem(psi, levyarc::Method::oracle, 1000, 1),
        levyarc::DomainError);
}

TEST_CASE("doney check passes for the symmetric cauchy case") {
    const levyarc::IdentityReport r = levyarc::check_doney(1.0, 0.5, 2048, 3000, 21);
    CHECK(r.identity == "doney");
    CHECK(r.verdict == levyarc::Verdict::pass);
    CHECK(r.p_value >= 1e-3);
    const levyarc::SubTest* mono = find_sub(r, "arcsine-distance-non-increasing");
    REQUIRE(mono != nullptr);
    CHECK(mono->pass);
    CHECK(has_note_containing(r, "positivity conditioning"));
}

TEST_CASE("doney check rejects a mismatched reference law") {
    const levyarc::IdentityReport r = levyarc::check_doney(1.0, 0.5, 512, 2000, 33, 0.7);
    CHECK(r.verdict == levyarc::Verdict::fail);
    CHECK(find_sub(r, "arcsine-ratio")->p_value < 1e-6);
}

TEST_CASE("self reciprocity holds for the symmetric brownian ratio") {
    const levyarc::CharExponent psi = levyarc::brownian(-0.25, 1.0);
    const levyarc::IdentityReport r =
        levyarc::check_self_reciprocal(psi, levyarc::Method::oracle, 20000, 812);
    CHECK(r.verdict == levyarc::Verdict::pass);
    REQUIRE(find_sub(r, "ratio-vs-cauchy-squared") != nullptr);
    CHECK(find_sub(r, "ratio-vs-cauchy-squared")->pass);
}

TEST_CASE("self reciprocity requires the root one half") {
    const levyarc::CharExponent psi = levyarc::brownian(-0.15, 1.0);
    CHECK_THROWS_AS(
        (void)levyarc::check_self_reciprocal(psi, levyarc::Method::oracle, 1000, 1),
        levyarc::DomainError);
}

TEST_CASE("gamma-stable check singles out the matching variant") {
    const levyarc::IdentityReport r = levyarc::check_cor_s2(0.6, 0.3, 60000, 501);
    CHECK(r.identity == "gamma-stable");
    CHECK(r.verdict == levyarc::Verdict::pass);

    const levyarc::SubTest* winner = find_sub(r, "variant[g-index=rho|bias=1-rho|scale=1]");
    REQUIRE(winner != nullptr);
    CHECK(winner->pass);
    int passing = 0;
    for (const levyarc::SubTest& s : r.subtests)
        if (s.label.rfind("variant[", 0) == 0 && s.pass) ++passing;
    CHECK(passing == 1);

    const levyarc::SubTest* control = find_sub(r, "complement-arcsine-rejected");
    REQUIRE(control != nullptr);
    CHECK(control->pass);

    REQUIRE(r.calibration_constant.has_value());
    CHECK(*r.calibration_constant == doctest::Approx(1.0).epsilon(0.06));
    CHECK(has_note_containing(r, "variant[g-index=rho|bias=1-rho|scale=1]"));
}

TEST_CASE("gamma-stable check validates its parameter ranges") {
    CHECK_THROWS_AS((void)levyarc::check_cor_s2(1.2, 0.3, 1000, 1), levyarc::DomainError);
    CHECK_THROWS_AS((void)levyarc::check_cor_s2(0.6, 1.3, 1000, 1), levyarc::DomainError);
}

TEST_CASE("mellin product check sees the calibration constant one") {
    const levyarc::IdentityReport r = levyarc::check_mellin_product(0.6, 0.3);
    CHECK(r.verdict == levyarc::Verdict::pass);
    CHECK(r.ks_statistic <= 1e-9);
    REQUIRE(r.calibration_constant.has_value());
    CHECK(*r.calibration_constant == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(find_sub(r, "unit-at-origin")->pass);
}

TEST_CASE("mellin product check adds the symmetry subtest at rho one half") {
    const levyarc::IdentityReport r = levyarc::check_mellin_product(0.7, 0.5);
    CHECK(r.verdict == levyarc::Verdict::pass);
    const levyarc::SubTest* sym = find_sub(r, "symmetric-under-negation");
    REQUIRE(sym != nullptr);
    CHECK(sym->pass);
}

TEST_CASE("median p gate aggregates five seeded runs") {
    auto run = [](std::uint64_t seed) {
        return levyarc::check_main_theorem(levyarc::brownian(-0.25, 1.0),
                                           levyarc::Method::oracle, 5000, seed);
    };
    const levyarc::IdentityReport gate = levyarc::median_p_gate(run, 900);
    CHECK(gate.identity == "main-theorem/median-p-gate");
    CHECK(gate.subtests.size() == 5);
    CHECK(gate.verdict == levyarc::Verdict::pass);
    CHECK(gate.p_value >= 0.01);

    auto bad = [](std::uint64_t seed) {
        return levyarc::check_main_theorem(levyarc::brownian(-0.25, 1.0),
                                           levyarc::Method::oracle, 5000, seed, 0.65);
    };
    CHECK(levyarc::median_p_gate(bad, 900).verdict == levyarc::Verdict::fail);
}

TEST_CASE("verdict names round trip") {
    CHECK(levyarc::to_string(levyarc::Verdict::pass) == "pass");
    CHECK(levyarc::to_string(levyarc::Verdict::fail) == "fail");
    CHECK(levyarc::to_string(levyarc::Verdict::inconclusive) == "inconclusive");
}
