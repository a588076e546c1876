#include "bsq/schrodinger.hpp"

#include "bsq/errors.hpp"
#include "bsq/action.hpp"
#include "bsq/well_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsq {

namespace {

// Sturm count: number of eigenvalues of the symmetric tridiagonal (d, e)
// strictly below x, via the sign changes of the LDL^T pivots.
int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0)
            q = -tiny;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0)
            ++count;
    }
    return count;
}

// k-th eigenvalue (0-based, ascending) by bisection on the Sturm count.
double eigenvalue_by_index(const std::vector<double>& d, const std::vector<double>& e,
                           int k, double lo, double hi) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (count_below(d, e, mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-14 * (std::fabs(lo) + std::fabs(hi)) + 1e-300)
            break;
    }
    return 0.5 * (lo + hi);
}

struct TridiagSolve {
    std::vector<double> values; // lowest eigenvalues, ascending
    int boundOnGrid = 0;        // Sturm count below the dissociation energy
};

TridiagSolve solve_grid(const PotentialSpec& spec, double xMin, double xMax, int points,
                        int want, const DissociationEnergy& diss) {
    const Constants& c = spec.constants;
    const double dx = (xMax - xMin) / static_cast<double>(points + 1);
    const double kin = c.hbar * c.hbar / (c.mass * dx * dx);

    std::vector<double> d(points), e(points - 1, -0.5 * kin);
    for (int i = 0; i < points; ++i)
        d[i] = kin + evaluate(spec, xMin + dx * (i + 1));

    // Gershgorin bounds
    double lo = d[0], hi = d[0];
    for (int i = 0; i < points; ++i) {
        const double left = i > 0 ? std::fabs(e[i - 1]) : 0.0;
        const double right = i + 1 < points ? std::fabs(e[i]) : 0.0;
        lo = std::min(lo, d[i] - left - right);
        hi = std::max(hi, d[i] + left + right);
    }

    TridiagSolve out;
    out.boundOnGrid = diss.unbounded ? points : count_below(d, e, diss.value);
    const int m = std::min(want, points);
    out.values.reserve(m);
    for (int k = 0; k < m; ++k)
        out.values.push_back(eigenvalue_by_index(d, e, k, lo, hi));
    return out;
}

} // namespace

void GridSettings::validate() const {
    if (points < 500)
        throw std::invalid_argument("GridSettings: points must be >= 500");
    if (!(xMin < xMax))
        throw std::invalid_argument("GridSettings: xMin must be below xMax");
}

namespace {

// Enough nodes that the doubling shift of a second-order scheme stays below
// the 1e-5 resolution gate: k_max * dx <= 0.011 with k_max the largest local
// wavenumber sqrt(2 m span) / hbar supported by the grid.
int points_for(double range, double span, const Constants& c) {
    const double kMax = std::sqrt(2.0 * c.mass * std::max(span, 1e-300)) / c.hbar;
    const double wanted = range * kMax / 0.008;
    const int n = static_cast<int>(std::clamp(wanted, 1501.0, 72001.0));
    return n | 1;
}

} // namespace

GridSettings GridSettings::defaults_for(const PotentialSpec& spec) {
    const Constants& c = spec.constants;
    struct Visitor {
        const PotentialSpec& spec;
        const Constants& c;

        GridSettings make(double lo, double hi, double span) const {
            return {lo, hi, points_for(hi - lo, span, c)};
        }
        GridSettings operator()(const Harmonic& p) const {
            const double l = std::sqrt(c.hbar / (c.mass * p.omega));
            return make(-10.0 * l, 10.0 * l, 25.0 * c.hbar * p.omega);
        }
        GridSettings operator()(const PoschlTeller& p) const {
            return make(-14.0 / p.a, 14.0 / p.a, p.v0);
        }
        GridSettings operator()(const PoschlTellerTrig& p) const {
            const double w = 0.5 * std::numbers::pi / p.a;
            const double omega = p.a * std::sqrt(2.0 * p.v0 / c.mass);
            return make(-w, w, 25.0 * c.hbar * omega);
        }
        GridSettings operator()(const Morse& p) const {
            return make(-2.5 / p.a, 40.0 / p.a, p.v0);
        }
        GridSettings operator()(const RosenMorse& p) const {
            const double at = p.a_tilde(c);
            const double x0 = std::atanh(-p.B / (p.A * at)) / p.a;
            const WellExpansion w = expand_well(spec, 4);
            const double halfRange =
                std::max(10.0 * w.quantum_length(), 5.0 / p.a);
            const double depth =
                p.A * p.A + p.B * p.B / (p.A * p.A) - 2.0 * std::fabs(p.B) - w.vMin;
            const double span = std::min(depth, 30.0 * c.hbar * w.omega);
            return make(x0 - halfRange, x0 + halfRange, span);
        }
        GridSettings operator()(const LJFamily& p) const {
            // 0.35a puts the inner wall at roughly 3e5 V0
            return make(0.35 * p.a, 12.0 * p.a, 0.25 * p.v0);
        }
        GridSettings operator()(const Polynomial& p) const {
            const WellExpansion w = expand_well(spec, 4);
            return make(p.searchLo, p.searchHi, 25.0 * c.hbar * w.omega);
        }
        GridSettings operator()(const ExpressionPotential& p) const {
            const WellExpansion w = expand_well(spec, 4);
            return make(p.searchLo, p.searchHi, 25.0 * c.hbar * w.omega);
        }
    };
    return std::visit(Visitor{spec, c}, spec.kind);
}

OracleLevels solve_bound_states(const PotentialSpec& spec, const GridSettings& grid,
                                int count) {
    grid.validate();
    if (count < 1)
        throw std::invalid_argument("solve_bound_states: count must be >= 1");

    const WellMinimum min = well_minimum(spec);
    if (!(grid.xMin < min.x0) || !(min.x0 < grid.xMax))
        throw std::invalid_argument("solve_bound_states: grid does not contain the minimum");

    DissociationEnergy diss{true, 0.0};
    try {
        diss = dissociation_energy(spec);
    } catch (const NotAvailableError&) {
        // no threshold known; treat every grid level as bound
    }
    if (!diss.unbounded) {
        // the continuum starts at the lower asymptote (differs from the
        // reported dissociation energy for Rosen-Morse)
        diss.value = std::min(diss.value, quantization_ceiling(spec));
    }

    const TridiagSolve coarse = solve_grid(spec, grid.xMin, grid.xMax, grid.points,
                                           count, diss);
    const TridiagSolve fine = solve_grid(spec, grid.xMin, grid.xMax, 2 * grid.points + 1,
                                         count, diss);

    const int nBound = std::min(coarse.boundOnGrid, fine.boundOnGrid);
    const int m = std::min<int>({count, static_cast<int>(fine.values.size()),
                                 diss.unbounded ? count : nBound});

    const double depth =
        (diss.unbounded ? std::fabs(min.vMin) + 1.0 : diss.value - min.vMin);

    OracleLevels out;
    out.countShort = m < count;
    out.levels.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double e1 = coarse.values[k];
        const double e2 = fine.values[k];
        // scale: a level is "deep" against either the threshold or the bottom
        const double scale =
            std::max({std::fabs(e2), e2 - min.vMin, 1e-3 * depth});
        const double shift = std::fabs(e2 - e1) / scale;
        if (shift > 1e-5) {
            std::ostringstream os;
            os << "solve_bound_states: grid too coarse for level " << k
               << " (doubling shift " << shift << ")";
            throw ResolutionError(os.str());
        }
        // second-order scheme: doubling leaves 1/4 of the error
        out.levels.push_back({k, e2 + (e2 - e1) / 3.0, Method::oracle});
    }

    // wall containment (hard-wall kinds place the boundary at the wall itself)
    if (!out.levels.empty()) {
        const double top = out.levels.back().energy;
        const bool hardWall = std::holds_alternative<PoschlTellerTrig>(spec.kind);
        if (!hardWall) {
            for (double edge : {grid.xMin, grid.xMax}) {
                double v;
                try {
                    v = evaluate(spec, edge);
                } catch (const DomainError&) {
                    continue; // boundary sits on a wall
                }
                if (diss.unbounded && v < top) {
                    std::ostringstream os;
                    os << "solve_bound_states: V(" << edge << ") = " << v
                       << " below the highest requested level " << top;
                    throw ResolutionError(os.str());
                }
            }
        }
    }
    return out;
}

SpectrumComparison compare_spectra(std::span<const SpectrumLevel> levelsA,
                                   std::span<const SpectrumLevel> levelsB,
                                   double floorScale) {
    if (levelsA.size() != levelsB.size())
        throw ShapeError("compare_spectra: spectra have different lengths");

    SpectrumComparison out;
    out.floorScale = floorScale;
    out.rows.reserve(levelsA.size());
    for (std::size_t i = 0; i < levelsA.size(); ++i) {
        if (levelsA[i].n != levelsB[i].n)
            throw ShapeError("compare_spectra: quantum numbers do not match");
        const double abs = std::fabs(levelsA[i].energy - levelsB[i].energy);
        const double rel = abs / std::max(std::fabs(levelsB[i].energy), floorScale);
        out.rows.push_back({levelsA[i].n, abs, rel});
        out.maxAbs = std::max(out.maxAbs, abs);
        out.maxRel = std::max(out.maxRel, rel);
    }
    return out;
}

} // namespace bsq
