#pragma once

#include "bsq/potential.hpp"
#include "bsq/spectrum.hpp"

#include <span>
#include <vector>

namespace bsq {

struct GridSettings {
    double xMin = 0.0;
    double xMax = 0.0;
    int points = 0; // interior nodes of the Dirichlet grid

    void validate() const;

    /// Shipped per-kind defaults so solves are reproducible without tuning.
    static GridSettings defaults_for(const PotentialSpec& spec);
};

struct OracleLevels {
    std::vector<SpectrumLevel> levels;
    bool countShort = false; // fewer bound states than requested
};

/// Lowest `count` bound eigenvalues of -(hbar^2/2m) psi'' + V psi = E psi on
/// a uniform Dirichlet grid: three-point Laplacian, symmetric tridiagonal
/// eigenvalues by Sturm-sequence bisection (certified brackets, no external
/// linear algebra). The solve runs on the grid and its doubled refinement;
/// levels are Richardson-extrapolated and a doubling shift above 1e-5
/// relative raises ResolutionError.
OracleLevels solve_bound_states(const PotentialSpec& spec, const GridSettings& grid,
                                int count);

struct SpectrumComparison {
    struct Row {
        int n = 0;
        double absDiff = 0.0;
        double relDiff = 0.0;
    };
    std::vector<Row> rows;
    double maxAbs = 0.0;
    double maxRel = 0.0;
    double floorScale = 1e-3;
};

/// Per-level differences of two spectra covering the same n range.
/// relDiff = |Ea - Eb| / max(|Eref|, floorScale), guarding the near-zero top
/// levels; reference is the second list.
SpectrumComparison compare_spectra(std::span<const SpectrumLevel> levelsA,
                                   std::span<const SpectrumLevel> levelsB,
                                   double floorScale = 1e-3);

} // namespace bsq
