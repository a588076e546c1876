#pragma once

#include "bsq/potential.hpp"

#include <optional>

namespace bsq {

enum class LJBranch { subcritical, critical, supercritical };

/// Near-threshold structure of the LJ-family action: the epsilon exponent
/// 1/2 - 1/k, the finite threshold action J0 (k > 2 only) and the level
/// budget n0 + 1/2 = J0/h. The subleading amplitude is deliberately not
/// represented; only the exponent is contract-bearing.
struct LJAsymptotics {
    int k = 6;
    double hwOverV0 = 0.0;
    LJBranch branch = LJBranch::supercritical;
    double epsilonExponent = 0.0;        // 1/2 - 1/k
    std::optional<double> j0;            // physical action; empty = divergent
    std::optional<double> n0PlusHalf;    // empty when k <= 2
};

/// Rational interpolation coefficients (the fitting alpha, beta -- distinct
/// from the oscillator couplings).
struct FitCoefficients {
    double alphaFit = 0.0;
    double betaFit = 0.0;
};

struct SmallEnergyAction {
    double value = 0.0;           // reduced action (units of 2 a sqrt(2 m V0) / k)
    double epsilonExponent = 0.0; // 1/2 - 1/k
    bool divergentAtThreshold = false;
};

LJAsymptotics analyze_lj(int k, double hwOverV0, const Constants& constants = {});

/// Reduced small-|E| action at epsilon = |E|/V0. For k < 2 this is the
/// leading divergent term; for k > 2 it is the finite threshold value with
/// the subleading exponent reported (its amplitude stays undetermined).
/// k = 2 belongs to neither branch and throws MarginalCaseError.
SmallEnergyAction small_e_action(int k, double epsilon);

/// J0/h via Gamma functions; requires k > 2.
double n0_plus_half(int k, double hwOverV0);

/// Interpolating level formula for k < 2 (exact at k = 1):
///   4E/V0 = -[1 + 2^{2-1/k} sqrt(pi) Gamma(1+1/k)/Gamma(1/k-1/2)
///                (n+1/2) hbar w / V0]^{-2k/(2-k)}
double subcritical_energy(int k, int n, double hwOverV0);

/// Match the rational interpolation so its small-(n+1/2) expansion
/// reproduces the perturbative series through second order (k = 6 case).
FitCoefficients fit_coefficients(int k, double hwOverV0);

/// 4E/V0 = -(1 - (n+1/2)/(n0+1/2))^3 / (1 + alpha (n+1/2) + beta (n+1/2)^2).
double fitted_energy(int n, double n0PlusHalf, const FitCoefficients& fit);

/// Convenience: an LJ spec with V0 = 1 whose frequency ratio hbar*w/V0
/// equals the requested value under the given constants.
PotentialSpec lj_spec_for_ratio(int k, double hwOverV0, const Constants& constants = {});

} // namespace bsq
