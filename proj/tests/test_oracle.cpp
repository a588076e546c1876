#include "bsq/schrodinger.hpp"

#include "bsq/action.hpp"
#include "bsq/errors.hpp"
#include "bsq/lj_asymptotics.hpp"
#include "bsq/well_series.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace bsq;

namespace {
const Constants kUnits{};
}

TEST_CASE("grid validation") {
    GridSettings g{-1.0, 1.0, 100};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = {1.0, -1.0, 2000};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    CHECK_THROWS_AS(solve_bound_states(ho, {3.0, 10.0, 2001}, 2), std::invalid_argument);
}

TEST_CASE("harmonic ladder on the reference grid") {
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    const OracleLevels sol = solve_bound_states(ho, {-10.0, 10.0, 4000}, 3);
    REQUIRE(sol.levels.size() == 3);
    for (int n = 0; n < 3; ++n) {
        CHECK(std::fabs(sol.levels[n].energy - (n + 0.5)) <= 1e-6);
        CHECK(sol.levels[n].method == Method::oracle);
        CHECK(sol.levels[n].n == n);
    }
    CHECK(!sol.countShort);
}

TEST_CASE("Morse: oracle against the closed-form spectrum") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const OracleLevels sol =
        solve_bound_states(mo, GridSettings::defaults_for(mo), 10);
    REQUIRE(sol.levels.size() == 10);
    CHECK(std::fabs(sol.levels[0].energy - (-45.125)) <= 1e-5 * 45.125);
    for (int n = 0; n <= 9; ++n) {
        const double exact = exact_energy(mo, n);
        CHECK(std::fabs(sol.levels[n].energy - exact) <=
              1e-4 * std::max(std::fabs(exact), 0.05));
    }
}

TEST_CASE("Poschl-Teller: oracle against the fully quantum spectrum") {
    // 8 m V0 / (a^2 hbar^2) = 1000
    PotentialSpec pt{PoschlTeller{125.0, 1.0}, kUnits};
    const OracleLevels sol = solve_bound_states(pt, {-8.0, 8.0, 32001}, 6);
    REQUIRE(sol.levels.size() == 6);
    for (int n = 0; n <= 5; ++n) {
        const double exact = exact_energy(pt, n);
        CHECK(std::fabs(sol.levels[n].energy - exact) <= 1e-5 * std::fabs(exact));
    }
}

TEST_CASE("trigonometric Poschl-Teller: oracle in the semiclassical regime") {
    // 8 m V0 / (a^2 hbar^2) = 1e5 shrinks the semiclassical gap below 1e-4
    PotentialSpec tp{PoschlTellerTrig{12500.0, 1.0}, kUnits};
    const OracleLevels sol =
        solve_bound_states(tp, GridSettings::defaults_for(tp), 4);
    REQUIRE(sol.levels.size() == 4);
    for (int n = 0; n <= 3; ++n) {
        const double closed = exact_energy(tp, n); // the closed-form perfect square
        CHECK(std::fabs(sol.levels[n].energy - closed) <= 1e-4 * closed);
    }
}

TEST_CASE("Rosen-Morse: oracle against the semiclassical closed form at 1%") {
    // c = a hbar / sqrt(2m) = 0.022 A keeps the closed form's own
    // semiclassical error below 1% of the A^2 energy scale
    Constants cm{1.0, 1000.0};
    PotentialSpec rm{RosenMorse{5.0, 4.0, 1.0}, cm};
    const WellMinimum min = well_minimum(rm);
    const WellExpansion w = expand_well(rm);
    const double lq = w.quantum_length();
    const OracleLevels sol =
        solve_bound_states(rm, {min.x0 - 30.0 * lq, min.x0 + 30.0 * lq, 32001}, 4);
    REQUIRE(sol.levels.size() == 4);
    for (int n = 0; n <= 3; ++n) {
        const double closed = exact_energy(rm, n);
        CHECK(std::fabs(sol.levels[n].energy - closed) <= 0.01 * 25.0); // A^2 scale
    }
}

TEST_CASE("Rosen-Morse: the perturbative series lands on the oracle levels") {
    // the full expansion pipeline (exact-Atilde Taylor data through the
    // quadratic energy series) against the independent quantum solve
    Constants cm{1.0, 1000.0};
    PotentialSpec rm{RosenMorse{5.0, 4.0, 1.0}, cm};
    const WellMinimum min = well_minimum(rm);
    const WellExpansion w = expand_well(rm);
    const double lq = w.quantum_length();
    const OracleLevels sol =
        solve_bound_states(rm, {min.x0 - 30.0 * lq, min.x0 + 30.0 * lq, 32001}, 4);
    for (int n = 0; n <= 3; ++n) {
        const double series = perturbative_energy(w, n);
        CHECK(std::fabs(series - sol.levels[n].energy) <= 1e-4 * 25.0);
    }
}

TEST_CASE("oracle knows the SUSY zero of the Rosen-Morse ground state") {
    // independent of the closed forms: the exact quantum ground state of this
    // family sits at exactly zero once the A^2 + B^2/A^2 shift is included
    Constants cm{1.0, 1000.0};
    PotentialSpec rm{RosenMorse{5.0, 4.0, 1.0}, cm};
    const WellMinimum min = well_minimum(rm);
    const WellExpansion w = expand_well(rm);
    const double lq = w.quantum_length();
    const OracleLevels sol =
        solve_bound_states(rm, {min.x0 - 30.0 * lq, min.x0 + 30.0 * lq, 32001}, 1);
    CHECK(std::fabs(sol.levels[0].energy) <= 1e-6 * 25.0);
}

TEST_CASE("grid convergence: raw doubling shift ratio is ~4 (second order)") {
    // test-local Sturm bisection for the lowest eigenvalue of the plain
    // (un-extrapolated) finite-difference matrix
    auto raw_ground_state = [](int points) {
        const double xMin = -10.0, xMax = 10.0;
        const double dx = (xMax - xMin) / (points + 1);
        const double kin = 1.0 / (dx * dx);
        std::vector<double> d(points);
        for (int i = 0; i < points; ++i) {
            const double x = xMin + dx * (i + 1);
            d[i] = kin + 0.5 * x * x;
        }
        const double e = -0.5 * kin;
        auto countBelow = [&](double lambda) {
            int cnt = 0;
            double q = d[0] - lambda;
            if (q < 0) ++cnt;
            for (int i = 1; i < points; ++i) {
                if (q == 0) q = -1e-300;
                q = d[i] - lambda - e * e / q;
                if (q < 0) ++cnt;
            }
            return cnt;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            (countBelow(mid) >= 1 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double r1 = std::fabs(raw_ground_state(1000) - 0.5);
    const double r2 = std::fabs(raw_ground_state(2001) - 0.5); // nested doubling
    const double r3 = std::fabs(raw_ground_state(4003) - 0.5);
    CAPTURE(r1);
    CAPTURE(r2);
    CAPTURE(r3);
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);
    CHECK(r2 / r3 > 3.5);
    CHECK(r2 / r3 < 4.5);

    // the shipped values beat the raw scheme by orders of magnitude
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    const double ext =
        std::fabs(solve_bound_states(ho, {-10.0, 10.0, 4000}, 3).levels[2].energy - 2.5);
    CHECK(ext < 0.02 * r1);
}

TEST_CASE("resolution gate fires on a coarse grid") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    CHECK_THROWS_AS(solve_bound_states(mo, {-2.5, 40.0, 1501}, 10), ResolutionError);
}

TEST_CASE("bound-state count against level_count (+-1)") {
    struct Case {
        PotentialSpec spec;
        GridSettings grid;
    };
    const PotentialSpec lj = lj_spec_for_ratio(6, 0.15);
    std::vector<Case> cases = {
        {{Morse{50.0, 1.0}, kUnits}, GridSettings::defaults_for({Morse{50.0, 1.0}, kUnits})},
        {{PoschlTeller{125.0, 1.0}, kUnits},
         GridSettings::defaults_for({PoschlTeller{125.0, 1.0}, kUnits})},
        {lj, GridSettings::defaults_for(lj)},
        {{RosenMorse{5.0, 4.0, 1.0}, kUnits},
         GridSettings::defaults_for({RosenMorse{5.0, 4.0, 1.0}, kUnits})},
    };
    for (const auto& c : cases) {
        CAPTURE(kind_name(c.spec));
        const LevelCount lc = level_count(c.spec);
        REQUIRE(lc.finite);
        const OracleLevels sol = solve_bound_states(c.spec, c.grid, lc.count + 2);
        const int found = static_cast<int>(sol.levels.size());
        CHECK(found >= lc.count - 1);
        CHECK(found <= lc.count + 1);
    }
}

TEST_CASE("count-short flag when asking beyond the well") {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const OracleLevels sol =
        solve_bound_states(mo, GridSettings::defaults_for(mo), 14);
    CHECK(sol.countShort);
    CHECK(sol.levels.size() == 10);
}

TEST_CASE("compare_spectra") {
    std::vector<SpectrumLevel> a = {{0, -1.0, Method::oracle}, {1, -0.5, Method::oracle}};
    std::vector<SpectrumLevel> b = {{0, -1.0, Method::numericBS},
                                    {1, -0.5, Method::numericBS}};
    const SpectrumComparison same = compare_spectra(a, b);
    CHECK(same.maxAbs == 0.0);
    CHECK(same.maxRel == 0.0);
    REQUIRE(same.rows.size() == 2);

    b[1].energy = -0.45;
    const SpectrumComparison diff = compare_spectra(a, b, 1e-3);
    CHECK(diff.maxAbs == doctest::Approx(0.05));
    CHECK(diff.maxRel == doctest::Approx(0.05 / 0.45));

    // near-zero reference uses the floor scale
    std::vector<SpectrumLevel> c = {{0, 1e-6, Method::oracle}};
    std::vector<SpectrumLevel> d = {{0, 2e-6, Method::numericBS}};
    CHECK(compare_spectra(c, d, 1e-3).maxRel == doctest::Approx(1e-6 / 1e-3));

    std::vector<SpectrumLevel> shifted = {{1, -1.0, Method::oracle}};
    std::vector<SpectrumLevel> one = {{0, -1.0, Method::oracle}};
    CHECK_THROWS_AS(compare_spectra(one, shifted), ShapeError);
    std::vector<SpectrumLevel> two = {{0, -1.0, Method::oracle}, {1, -0.5, Method::oracle}};
    CHECK_THROWS_AS(compare_spectra(one, two), ShapeError);
}

TEST_CASE("perturbative-vs-quantizer comparison mechanizes the worked table") {
    // deep levels agree to the printed digit, n = 10 disagrees by > 25%
    const PotentialSpec lj = lj_spec_for_ratio(6, 0.03);
    const WellExpansion w = expand_well(lj);
    std::vector<SpectrumLevel> pert, direct;
    for (int n : {0, 1, 2, 10}) {
        pert.push_back({n, 4.0 * perturbative_energy(w, n), Method::perturbative});
        direct.push_back({n, 4.0 * quantize(lj, n).energy, Method::numericBS});
    }
    const SpectrumComparison cmp = compare_spectra(pert, direct, 1e-3);
    for (int i = 0; i < 3; ++i)
        CHECK(cmp.rows[i].absDiff < 1e-3); // below the printed 10^-3 digit
    CHECK(cmp.rows[3].relDiff > 0.25);     // the n = 10 breakdown
}
