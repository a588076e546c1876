#pragma once

#include "bsq/potential.hpp"
#include "bsq/spectrum.hpp"

#include <utility>

namespace bsq {

struct QuantizerSettings {
    double rootTolerance = 1e-10; // relative tolerance on J against (n+1/2)h
    int quadraturePoints = 64;    // initial trapezoid segment count
    int maxBisections = 200;      // iteration budget for root finding

    void validate() const;
};

/// Numerically evaluated closed-orbit action with its turning points.
struct ActionResult {
    double energy = 0.0;
    double action = 0.0;
    double xLeft = 0.0;
    double xRight = 0.0;
    double errorEstimate = 0.0;
};

struct ThresholdAction {
    bool divergent = false;
    double value = 0.0; // meaningful when !divergent
};

struct LevelCount {
    bool finite = true;
    int count = 0; // meaningful when finite
};

/// Roots of V(x) = E bracketing the well minimum. LJ kinds solve the
/// quadratic in y = (a/x)^k; everything else brackets by geometric marching
/// away from x0, then bisection and a Newton polish.
std::pair<double, double> turning_points_numeric(const PotentialSpec& spec,
                                                 double energy,
                                                 const QuantizerSettings& settings = {});

/// J(E) = 2 Integral sqrt(2m(E - V)) dx between the turning points.
///
/// The inverse-square-root endpoint singularities are removed analytically:
/// x = c + r sin(theta) maps the integrand to r^2 cos^2(theta) sqrt(h(theta))
/// with h smooth, and the trapezoid rule is refined by node doubling until
/// the doubling estimate clears tolerance. LJ kinds integrate in u = ln y,
/// y = (a/x)^k, where the quadratic under the root is handled exactly and
/// the power-law tail becomes a gentle exponential.
ActionResult action_integral(const PotentialSpec& spec, double energy,
                             const QuantizerSettings& settings = {});

/// Classical orbit period T = dJ/dE by the same substitutions (open midpoint rule).
double classical_period(const PotentialSpec& spec, double energy,
                        const QuantizerSettings& settings = {});

/// J at the dissociation threshold: closed forms for Morse and LJ (k > 2,
/// via Gamma functions), a divergence marker for LJ k <= 2, and an
/// Aitken-extrapolated quadrature limit otherwise. Throws NotApplicableError
/// for unbounded spectra.
ThresholdAction threshold_action(const PotentialSpec& spec);

/// The limiting-quadrature route alone (used to cross-check the closed forms).
double threshold_action_quadrature(const PotentialSpec& spec);

/// Solve J(E) = (n + 1/2) h for E: bracketed bisection on the monotone J,
/// then Newton steps using dJ/dE = classical period.
SpectrumLevel quantize(const PotentialSpec& spec, int n,
                       const QuantizerSettings& settings = {});

/// Number of bound levels, floor(J_threshold/h - 1/2) + 1; not finite when
/// the threshold action diverges (LJ with k <= 2).
LevelCount level_count(const PotentialSpec& spec);

/// Upper edge of the two-turning-point energy window (the lower asymptote
/// for Rosen-Morse, +infinity for confining wells).
double quantization_ceiling(const PotentialSpec& spec);

} // namespace bsq
