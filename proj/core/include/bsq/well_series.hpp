#pragma once

#include "bsq/potential.hpp"

#include <utility>

namespace bsq {

/// Taylor data of a well about its minimum, in the normalization
///   V = Vmin + (1/2) m w^2 u^2 + (alpha/3) u^3 + (beta/4) u^4 + (gamma/6) u^6
/// with u = x - x0.
struct WellExpansion {
    double x0 = 0.0;
    double vMin = 0.0;
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    Constants constants{};

    double quantum_length() const;

    /// Reflection symmetry up to finite-difference noise in alpha.
    bool symmetric(double tol = 1e-6) const;
};

/// Perturbative turning point: the harmonic amplitude (signed, the sign is
/// the side) plus one slot per correction order. value() sums the series.
struct TurningPointSeries {
    double a0 = 0.0;        // signed harmonic amplitude, a0^2 = 2E/(m w^2)
    double alphaTerm = 0.0; // O(alpha)
    double alpha2Term = 0.0;// O(alpha^2)
    double betaTerm = 0.0;  // O(beta)
    double beta2Term = 0.0; // O(beta^2), symmetric wells only
    double gammaTerm = 0.0; // O(gamma), symmetric wells only

    double value() const {
        return a0 + alphaTerm + alpha2Term + betaTerm + beta2Term + gammaTerm;
    }
};

enum class SeriesVariant {
    cubicQuartic,    // through O(alpha^2, beta)
    symmetricSextic, // through O(beta^2, gamma); requires alpha = 0
};

enum class MaslovShift {
    halfInteger, // quantize with n + 1/2 (smooth two-turning-point wells)
    rawInteger,  // the bare J = n h rule, for reproducing the uncorrected form
};

/// Expand a potential about its minimum. order 4 fills omega, alpha, beta;
/// order 6 additionally fills gamma and requires a reflection-symmetric well.
/// Catalog kinds use closed-form coefficients; polynomial and expression
/// kinds use central finite differences with Richardson extrapolation, with
/// step fdLengthScale * eps^(1/(d+2)) (fdLengthScale <= 0 picks a default
/// from the search interval).
WellExpansion expand_well(const PotentialSpec& spec, int order = 4,
                          double fdLengthScale = 0.0);

/// Perturbative turning points at oscillator energy E (measured above Vmin).
/// Asymmetric wells carry the alpha, alpha^2 and beta corrections; symmetric
/// wells instead carry beta, beta^2 and gamma.
std::pair<TurningPointSeries, TurningPointSeries>
turning_points_series(const WellExpansion& w, double energyAboveMin);

/// Truncated action series J(E) for oscillator energy E above the minimum:
///   cubicQuartic:    J = 2 pi E / w + (5 pi/6) alpha^2 E^2/(m^3 w^7)
///                        - (3 pi/4) beta E^2/(m^2 w^5)
///   symmetricSextic: J = (2 pi/w) [E - (3 beta/8) E^2/(m w^2)^2
///                        + (35/64) beta^2 E^3/(m w^2)^4
///                        - (5/12) gamma E^3/(m w^2)^3]
double action_series(const WellExpansion& w, double energyAboveMin,
                     SeriesVariant variant);

/// Perturbative level energy (absolute, Vmin added back). With the default
/// Maslov shift, E0 = (n + 1/2) hbar w.
double perturbative_energy(const WellExpansion& w, int n,
                           SeriesVariant variant = SeriesVariant::cubicQuartic,
                           MaslovShift shift = MaslovShift::halfInteger);

/// Coefficient c2 of the quadratic correction, E' = E0 - c2 (n + 1/2)^2:
///   c2 = (5/12) alpha^2 hbar^2/(m^3 w^4) - (3/8) beta hbar^2/(m^2 w^2).
double quadratic_coefficient(const WellExpansion& w);

} // namespace bsq
