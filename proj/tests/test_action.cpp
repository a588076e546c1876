#include "bsq/action.hpp"

#include "bsq/errors.hpp"
#include "bsq/lj_asymptotics.hpp"
#include "bsq/schrodinger.hpp"
#include "bsq/well_series.hpp"
#include "test_oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

using namespace bsq;

namespace {

const Constants kUnits{};
constexpr double kPi = std::numbers::pi;

QuantizerSettings tight_settings() {
    QuantizerSettings s;
    s.rootTolerance = 1e-12;
    return s;
}

} // namespace

TEST_CASE("settings validation") {
    QuantizerSettings bad;
    bad.rootTolerance = 1e-2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.quadraturePoints = 8;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("turning_points_numeric: harmonic") {
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    const auto [xl, xr] = turning_points_numeric(ho, 0.5);
    CHECK(xl == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(xr == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("turning_points_numeric: LJ roots in the y variable") {
    PotentialSpec lj{LJFamily{1.0, 1.0, 6}, kUnits};
    // eps = 0.1: y = (1 -+ sqrt(0.6))/2, x = y^{-1/6}
    const double y1 = 0.5 * (1.0 - std::sqrt(0.6));
    const double y2 = 0.5 * (1.0 + std::sqrt(0.6));
    const auto [xl, xr] = turning_points_numeric(lj, -0.1);
    CHECK(xl == doctest::Approx(std::pow(y2, -1.0 / 6.0)).epsilon(1e-12));
    CHECK(xr == doctest::Approx(std::pow(y1, -1.0 / 6.0)).epsilon(1e-12));

    // cross-check by bisection on V(x) = E
    auto f = [&](double x) { return evaluate(lj, x) + 0.1; };
    CHECK(xl == doctest::Approx(testsupport::bisect_root(f, 1.0, 1.13)).epsilon(1e-9));
    CHECK(xr == doctest::Approx(testsupport::bisect_root(f, 1.13, 3.0)).epsilon(1e-9));

    // near the bottom of the well both roots coincide at x0
    const auto [bl, br] = turning_points_numeric(lj, -0.25 * (1.0 - 1e-10));
    CHECK(std::fabs(br - bl) <= 1e-4);
    CHECK(bl == doctest::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-4));
}

TEST_CASE("turning_points_numeric: rejects energies outside the window") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    CHECK_THROWS_AS(turning_points_numeric(mo, 1.0), InvalidEnergyError);
    CHECK_THROWS_AS(turning_points_numeric(mo, -51.0), InvalidEnergyError);
}

TEST_CASE("action_integral: harmonic gives 2 pi E / w") {
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    const ActionResult r = action_integral(ho, 1.0);
    CHECK(r.action == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(r.xLeft == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.xRight == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.errorEstimate <= 1e-8 * r.action);
    CHECK(r.action > 0.0);
}

TEST_CASE("action_integral: agrees with an independent Simpson evaluation") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const double e = -20.0;
    const ActionResult r = action_integral(mo, e);
    auto v = [&](double x) { return evaluate(mo, x); };
    const double simpson = testsupport::action_by_simpson(v, 1.0, e, r.xLeft, r.xRight);
    CHECK(r.action == doctest::Approx(simpson).epsilon(1e-9));
}

TEST_CASE("action_integral: Morse approaches the threshold value 20 pi") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const double j = action_integral(mo, -5e-7 * 50.0).action;
    CHECK(j == doctest::Approx(20.0 * kPi).epsilon(2e-3));
    CHECK(j < 20.0 * kPi);
}

TEST_CASE("period identity: dJ/dE equals 2 pi / w for the harmonic well") {
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    const double delta = 1e-4;
    const double diff = (action_integral(ho, 1.0 + delta).action -
                         action_integral(ho, 1.0 - delta).action) /
                        (2.0 * delta);
    CHECK(std::fabs(diff - 2.0 * kPi) <= 1e-6);
    // and the dedicated period quadrature
    CHECK(classical_period(ho, 1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-8));
}

TEST_CASE("monotonicity: J(E) increases on every catalog well") {
    struct Case {
        PotentialSpec spec;
        double lo, hi;
    };
    const double ljA = (6.0 / (std::sqrt(2.0) * std::pow(2.0, 1.0 / 6.0))) / 0.15;
    std::vector<Case> cases = {
        {{Harmonic{1.0}, kUnits}, 1e-3, 50.0},
        {{PoschlTeller{2.0, 1.0}, kUnits}, -1.999, -1e-4},
        {{PoschlTellerTrig{1.0, 1.0}, kUnits}, 1.001, 40.0},
        {{Morse{50.0, 1.0}, kUnits}, -49.9, -1e-4},
        {{RosenMorse{5.0, 4.0, 1.0}, kUnits}, -3.4, 17.5},
        {{LJFamily{1.0, ljA, 6}, kUnits}, -0.2499, -1e-6},
        {{LJFamily{1.0, 1.0, 1}, kUnits}, -0.2499, -1e-4},
        {{Polynomial{{0.0, 0.0, 0.5, 0.05, 0.01}}, kUnits}, 1e-2, 20.0},
    };
    for (const auto& c : cases) {
        CAPTURE(kind_name(c.spec));
        double prev = -1.0;
        for (int i = 0; i < 50; ++i) {
            const double e = c.lo + (c.hi - c.lo) * i / 49.0;
            const double j = action_integral(c.spec, e).action;
            CHECK(j > prev);
            prev = j;
        }
    }
}

TEST_CASE("quantize: harmonic ladder") {
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    CHECK(quantize(ho, 0).energy == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(quantize(ho, 7).energy == doctest::Approx(7.5).epsilon(1e-9));
    CHECK(quantize(ho, 0).method == Method::numericBS);
}

TEST_CASE("quantize: Bohr-Sommerfeld is exact for Morse") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const QuantizerSettings s = tight_settings();
    for (int n = 0; n <= 9; ++n) {
        const double eq = quantize(mo, n, s).energy;
        const double ex = exact_energy(mo, n);
        CHECK(std::fabs(eq - ex) <= 1e-9 * std::fabs(ex));
    }
    CHECK_THROWS_AS(quantize(mo, 10, s), UnboundError);
}

TEST_CASE("quantize: Bohr-Sommerfeld matches the semiclassical Poschl-Teller ladder") {
    const double v0 = 125.0, a = 1.0;
    PotentialSpec pt{PoschlTeller{v0, a}, kUnits};
    const QuantizerSettings s = tight_settings();
    for (int n : {0, 4, 9, 15}) {
        const double bracket = 2.0 * n + 1.0 - std::sqrt(8.0 * v0);
        const double semiclassical = -(1.0 / 8.0) * bracket * bracket;
        const double eq = quantize(pt, n, s).energy;
        CHECK(std::fabs(eq - semiclassical) <= 1e-9 * std::fabs(semiclassical));
    }
}

TEST_CASE("quantizer consistency: J(quantize(n)) returns (n + 1/2) h") {
    const double ljA = (6.0 / (std::sqrt(2.0) * std::pow(2.0, 1.0 / 6.0))) / 0.15;
    for (PotentialSpec spec : {PotentialSpec{Morse{50.0, 1.0}, kUnits},
                               PotentialSpec{LJFamily{1.0, ljA, 6}, kUnits}}) {
        CAPTURE(kind_name(spec));
        const LevelCount lc = level_count(spec);
        REQUIRE(lc.finite);
        for (int n = 0; n < lc.count; ++n) {
            const SpectrumLevel lvl = quantize(spec, n);
            const double target = (n + 0.5) * kUnits.h();
            const double j = action_integral(spec, lvl.energy).action;
            CHECK(std::fabs(j - target) <= 1e-10 * target + 1e-8);
        }
    }
}

TEST_CASE("threshold_action: closed forms and quadrature limits agree") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const ThresholdAction tm = threshold_action(mo);
    REQUIRE(!tm.divergent);
    CHECK(tm.value == doctest::Approx(20.0 * kPi).epsilon(1e-14));
    CHECK(threshold_action_quadrature(mo) ==
          doctest::Approx(tm.value).epsilon(1e-3)); // 0.1% consistency gate

    const double ljA = (6.0 / (std::sqrt(2.0) * std::pow(2.0, 1.0 / 6.0))) / 0.03;
    PotentialSpec lj{LJFamily{1.0, ljA, 6}, kUnits};
    const ThresholdAction tl = threshold_action(lj);
    REQUIRE(!tl.divergent);
    CHECK(threshold_action_quadrature(lj) == doctest::Approx(tl.value).epsilon(1e-3));
}

TEST_CASE("threshold_action: Poschl-Teller quadrature limit (regression constant)") {
    // no closed form is used here; the limit must land on 2 pi sqrt(2 m V0)/a,
    // frozen for V0 = 50, a = 1: 20 pi
    PotentialSpec pt{PoschlTeller{50.0, 1.0}, kUnits};
    const ThresholdAction t = threshold_action(pt);
    REQUIRE(!t.divergent);
    CHECK(t.value == doctest::Approx(62.8318530718).epsilon(1e-6));
}

TEST_CASE("threshold_action: divergence markers and inapplicable kinds") {
    CHECK(threshold_action({LJFamily{1.0, 1.0, 1}, kUnits}).divergent);
    CHECK(threshold_action({LJFamily{1.0, 1.0, 2}, kUnits}).divergent);
    CHECK_THROWS_AS(threshold_action({Harmonic{1.0}, kUnits}), NotApplicableError);
    CHECK_THROWS_AS(threshold_action({PoschlTellerTrig{1.0, 1.0}, kUnits}),
                    NotApplicableError);
}

TEST_CASE("level_count") {
    CHECK(level_count({Morse{50.0, 1.0}, kUnits}).count == 10);

    const double ljA = (6.0 / (std::sqrt(2.0) * std::pow(2.0, 1.0 / 6.0))) / 0.03;
    CHECK(level_count({LJFamily{1.0, ljA, 6}, kUnits}).count == 24);

    // 8 m V0 / (a^2 hbar^2) = 1000: highest n sits just below (sqrt(1000)-1)/2
    CHECK(level_count({PoschlTeller{125.0, 1.0}, kUnits}).count == 16);

    CHECK(!level_count({LJFamily{1.0, 1.0, 1}, kUnits}).finite);
    CHECK_THROWS_AS(level_count({Harmonic{1.0}, kUnits}), NotApplicableError);
}

TEST_CASE("scale invariance: per-level 4E/V0 depends only on (hbar w / V0, k)") {
    auto make = [](double v0, double mass, double w) {
        const double a = (6.0 / (std::sqrt(2.0) * std::pow(2.0, 1.0 / 6.0))) *
                         std::sqrt(v0 / mass) / (w * v0);
        return PotentialSpec{LJFamily{v0, a, 6}, Constants{1.0, mass}};
    };
    const PotentialSpec specA = make(1.0, 1.0, 0.03);
    const PotentialSpec specB = make(4.0, 3.0, 0.03);
    const QuantizerSettings s = tight_settings();
    for (int n : {0, 3, 7, 15}) {
        const double ea = 4.0 * quantize(specA, n, s).energy / 1.0;
        const double eb = 4.0 * quantize(specB, n, s).energy / 4.0;
        CHECK(std::fabs(ea - eb) <= 1e-9 * std::fabs(ea));
    }
}

TEST_CASE("quantize: Bohr-Sommerfeld is exact for the trigonometric well too") {
    // the terminated series is a perfect square, and direct quantization of
    // the full sec^2 potential reproduces it to machine precision
    PotentialSpec tp{PoschlTellerTrig{125.0, 1.0}, kUnits};
    const QuantizerSettings s = tight_settings();
    for (int n : {0, 3, 8}) {
        const double eq = quantize(tp, n, s).energy;
        const double ex = exact_energy(tp, n);
        CHECK(std::fabs(eq - ex) <= 1e-11 * ex);
    }
}

TEST_CASE("generic well: quantizer, series and oracle agree at their own orders") {
    // quartic perturbation of a harmonic well, nothing catalog-specific:
    // the BS energy equals the sextic series near the bottom and sits a
    // semiclassical O(hbar^2) step away from the quantum oracle
    PotentialSpec poly{Polynomial{{0.0, 0.0, 0.5, 0.0, 0.01}, 0.0, -8.0, 8.0}, kUnits};
    const QuantizerSettings s = tight_settings();
    const WellExpansion w = expand_well(poly, 6);
    const OracleLevels sol =
        solve_bound_states(poly, GridSettings::defaults_for(poly), 4);
    for (int n = 0; n < 4; ++n) {
        const double bs = quantize(poly, n, s).energy;
        CHECK(std::fabs(bs - sol.levels[n].energy) <= 5e-3); // semiclassical gap
        const double series = perturbative_energy(w, n, SeriesVariant::symmetricSextic);
        CHECK(std::fabs(bs - series) <= 5e-3);
    }
    const double bs0 = quantize(poly, 0, s).energy;
    const double series0 = perturbative_energy(w, 0, SeriesVariant::symmetricSextic);
    CHECK(std::fabs(bs0 - series0) <= 1e-5); // truncation is tiny at the bottom
}

TEST_CASE("quantize: LJ expression transcription runs through the generic path") {
    // catalog LJ integrates in the log variable with closed-form roots; the
    // transcription marches and bisects in x. Same spectra either way.
    const double a = (6.0 / (std::sqrt(2.0) * std::pow(2.0, 1.0 / 6.0))) / 0.03;
    PotentialSpec cat{LJFamily{1.0, a, 6}, kUnits};
    char text[256];
    std::snprintf(text, sizeof text, "(%.17g/x)^12 - (%.17g/x)^6", a, a);
    PotentialSpec expr{ExpressionPotential{parse_expression(text), 0.4 * a, 3.5 * a},
                       kUnits};
    const QuantizerSettings s = tight_settings();
    for (int n : {0, 2}) {
        const double qc = quantize(cat, n, s).energy;
        const double qe = quantize(expr, n, s).energy;
        CHECK(std::fabs(qc - qe) <= 1e-9 * std::fabs(qc));
    }
}

TEST_CASE("quantize: LJ(12,6) mid-ladder level lands on the reference value") {
    // quoted reference: 4E/V0 = -0.18572 at n = 10 for hbar w / V0 = 0.03
    const PotentialSpec lj = lj_spec_for_ratio(6, 0.03);
    const double scaled = 4.0 * quantize(lj, 10).energy;
    CHECK(std::fabs(scaled - (-0.18572)) <= 2e-4); // within 0.1% of the depth span
}

TEST_CASE("quantize: expression transcription matches the catalog spectrum") {
    PotentialSpec cat{Morse{50.0, 1.0}, kUnits};
    PotentialSpec expr{
        ExpressionPotential{parse_expression("50*(exp(-2*x) - 2*exp(-x))"), -2.0, 30.0},
        kUnits};
    const QuantizerSettings s = tight_settings();
    for (int n : {0, 2, 5, 9}) {
        const double a = quantize(cat, n, s).energy;
        const double b = quantize(expr, n, s).energy;
        CHECK(std::fabs(a - b) <= 1e-9 * std::fabs(a));
    }
}

TEST_CASE("Rosen-Morse: quantization window is capped by the lower asymptote") {
    PotentialSpec rm{RosenMorse{5.0, 4.0, 1.0}, kUnits};
    CHECK(quantization_ceiling(rm) == doctest::Approx(17.64).epsilon(1e-12));
    CHECK_THROWS_AS(action_integral(rm, 20.0), InvalidEnergyError); // below 33.64 though
    CHECK(level_count(rm).count == 5);
    // quantize the whole ladder
    for (int n = 0; n < 5; ++n) {
        const double e = quantize(rm, n).energy;
        CHECK(e > -3.46);
        CHECK(e < 17.64);
    }
}
