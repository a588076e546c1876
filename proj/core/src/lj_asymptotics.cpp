#include "bsq/lj_asymptotics.hpp"

#include "bsq/errors.hpp"
#include "bsq/gamma.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bsq {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double check_k(int k) {
    if (k < 1)
        throw std::invalid_argument("lj asymptotics: k must be a positive integer");
    return 1.0 / static_cast<double>(k);
}

// reduced threshold action for k > 2: (sqrt(pi)/2) G(1/2 - 1/k) / G(2 - 1/k)
double reduced_j0(int k) {
    const double invK = 1.0 / static_cast<double>(k);
    return 0.5 * kSqrtPi * gamma_fn(0.5 - invK) / gamma_fn(2.0 - invK);
}

} // namespace

LJAsymptotics analyze_lj(int k, double hwOverV0, const Constants& constants) {
    check_k(k);
    if (!(hwOverV0 > 0.0))
        throw std::invalid_argument("analyze_lj: hbar*w/V0 must be positive");

    LJAsymptotics out;
    out.k = k;
    out.hwOverV0 = hwOverV0;
    out.epsilonExponent = 0.5 - 1.0 / static_cast<double>(k);
    out.branch = k < 2 ? LJBranch::subcritical
                       : (k == 2 ? LJBranch::critical : LJBranch::supercritical);
    if (k > 2) {
        out.n0PlusHalf = n0_plus_half(k, hwOverV0);
        out.j0 = *out.n0PlusHalf * constants.h();
    }
    return out;
}

SmallEnergyAction small_e_action(int k, double epsilon) {
    const double invK = check_k(k);
    if (k == 2)
        throw MarginalCaseError(
            "small_e_action: k = 2 is covered by neither asymptotic branch");
    if (!(epsilon > 0.0) || !(epsilon < 0.25))
        throw std::invalid_argument("small_e_action: epsilon must lie in (0, 1/4)");

    SmallEnergyAction out;
    out.epsilonExponent = 0.5 - invK;
    if (k < 2) {
        out.divergentAtThreshold = true;
        out.value = 0.5 * kSqrtPi * gamma_fn(invK - 0.5) / gamma_fn(invK + 1.0) *
                    std::pow(epsilon, 0.5 - invK);
    } else {
        out.value = reduced_j0(k);
    }
    return out;
}

double n0_plus_half(int k, double hwOverV0) {
    const double invK = check_k(k);
    if (k <= 2)
        throw NotApplicableError("n0_plus_half: finite threshold action needs k > 2");
    if (!(hwOverV0 > 0.0))
        throw std::invalid_argument("n0_plus_half: hbar*w/V0 must be positive");
    return std::pow(2.0, -invK) / (2.0 * kSqrtPi) * gamma_fn(0.5 - invK) /
           gamma_fn(2.0 - invK) / hwOverV0;
}

double subcritical_energy(int k, int n, double hwOverV0) {
    const double invK = check_k(k);
    if (k >= 2)
        throw NotApplicableError("subcritical_energy: defined for k < 2 only");
    if (n < 0)
        throw std::invalid_argument("subcritical_energy: n must be non-negative");
    const double q = std::pow(2.0, 2.0 - invK) * kSqrtPi * gamma_fn(1.0 + invK) /
                     gamma_fn(invK - 0.5);
    const double base = 1.0 + q * (n + 0.5) * hwOverV0;
    const double expo = 2.0 * k / (2.0 - static_cast<double>(k));
    return -std::pow(base, -expo);
}

FitCoefficients fit_coefficients(int k, double hwOverV0) {
    if (k != 6)
        throw NotApplicableError("fit_coefficients: worked out for k = 6 only");
    const double w = hwOverV0;
    const double n0 = n0_plus_half(k, w);

    // Equate the O(nu) and O(nu^2) Taylor coefficients of the rational fit
    // to the perturbative expansion -1 + 4 nu w - (91/18) nu^2 w^2. The
    // cubic numerator contributes the 3/n0 and 3/n0^2 terms moved to the
    // right-hand side; the system is triangular in (alpha, beta).
    const double c2 = 2.0 * (2.0 * k + 1.0) * (k + 1.0) / (double(k) * k);
    FitCoefficients fit;
    fit.alphaFit = 4.0 * w - 3.0 / n0;
    fit.betaFit = 3.0 / (n0 * n0) + 3.0 * fit.alphaFit / n0 +
                  fit.alphaFit * fit.alphaFit - c2 * w * w;

    // denominator must stay positive over the bound range
    auto denom = [&](double nu) {
        return 1.0 + fit.alphaFit * nu + fit.betaFit * nu * nu;
    };
    double minDen = std::min(denom(0.0), denom(n0));
    if (fit.betaFit > 0.0) {
        const double vertex = -0.5 * fit.alphaFit / fit.betaFit;
        if (vertex > 0.0 && vertex < n0)
            minDen = std::min(minDen, denom(vertex));
    }
    if (!(minDen > 0.0)) {
        std::ostringstream os;
        os << "fit_coefficients: denominator not positive on [0, " << n0 << "]";
        throw FitFailureError(os.str());
    }
    return fit;
}

double fitted_energy(int n, double n0PlusHalf, const FitCoefficients& fit) {
    if (n < 0)
        throw std::invalid_argument("fitted_energy: n must be non-negative");
    const double nu = n + 0.5;
    if (nu > n0PlusHalf) {
        std::ostringstream os;
        os << "fitted_energy: n = " << n << " beyond the last bound level";
        throw UnboundError(os.str());
    }
    const double top = 1.0 - nu / n0PlusHalf;
    return -top * top * top /
           (1.0 + fit.alphaFit * nu + fit.betaFit * nu * nu);
}

PotentialSpec lj_spec_for_ratio(int k, double hwOverV0, const Constants& constants) {
    check_k(k);
    if (!(hwOverV0 > 0.0))
        throw std::invalid_argument("lj_spec_for_ratio: hbar*w/V0 must be positive");
    // V0 = 1; pick a so that hbar*w = hwOverV0
    const double omegaTarget = hwOverV0 / constants.hbar;
    const double a = (k / (std::sqrt(2.0) * std::pow(2.0, 1.0 / k))) /
                     (std::sqrt(constants.mass) * omegaTarget);
    return {LJFamily{1.0, a, k}, constants};
}

} // namespace bsq
