#include "bsq/well_series.hpp"

#include "bsq/errors.hpp"
#include "numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bsq {

namespace {

constexpr double kPi = std::numbers::pi;

struct ClosedFormCoeffs {
    double omega, alpha, beta, gamma;
    bool symmetric; // gamma trustworthy (reflection-symmetric about x0)
};

ClosedFormCoeffs fd_coefficients(const PotentialSpec& spec, double x0, int order,
                                 double lengthScale) {
    auto f = [&](double u) { return evaluate(spec, u); };
    const double d2 = detail::fd_derivative(f, x0, 2, lengthScale);
    if (!(d2 > 0.0))
        throw NoWellError("expand_well: V''(x0) is not positive");
    const double omega = std::sqrt(d2 / spec.constants.mass);
    const double alpha = 0.5 * detail::fd_derivative(f, x0, 3, lengthScale);
    const double beta = detail::fd_derivative(f, x0, 4, lengthScale) / 6.0;
    double gamma = 0.0;
    if (order >= 6)
        gamma = detail::fd_derivative(f, x0, 6, lengthScale) / 120.0;
    return {omega, alpha, beta, gamma, false};
}

} // namespace

double WellExpansion::quantum_length() const {
    return std::sqrt(constants.hbar / (constants.mass * omega));
}

bool WellExpansion::symmetric(double tol) const {
    return std::fabs(alpha) * quantum_length() <=
           tol * constants.mass * omega * omega;
}

WellExpansion expand_well(const PotentialSpec& spec, int order, double fdLengthScale) {
    if (order != 4 && order != 6)
        throw std::invalid_argument("expand_well: order must be 4 or 6");

    const Constants& c = spec.constants;
    const WellMinimum min = well_minimum(spec);

    struct Visitor {
        const PotentialSpec& spec;
        const Constants& c;
        const WellMinimum& min;
        int order;
        double fdLengthScale;

        ClosedFormCoeffs operator()(const Harmonic& p) const {
            return {p.omega, 0.0, 0.0, 0.0, true};
        }
        ClosedFormCoeffs operator()(const PoschlTeller& p) const {
            const double omega = p.a * std::sqrt(2.0 * p.v0 / c.mass);
            const double a4 = std::pow(p.a, 4);
            return {omega, 0.0, -(8.0 / 3.0) * p.v0 * a4,
                    (34.0 / 15.0) * p.v0 * a4 * p.a * p.a, true};
        }
        ClosedFormCoeffs operator()(const PoschlTellerTrig& p) const {
            const double omega = p.a * std::sqrt(2.0 * p.v0 / c.mass);
            const double a4 = std::pow(p.a, 4);
            return {omega, 0.0, (8.0 / 3.0) * p.v0 * a4,
                    (34.0 / 15.0) * p.v0 * a4 * p.a * p.a, true};
        }
        ClosedFormCoeffs operator()(const Morse& p) const {
            const double omega = p.a * std::sqrt(2.0 * p.v0 / c.mass);
            return {omega, -3.0 * p.v0 * std::pow(p.a, 3),
                    (7.0 / 3.0) * p.v0 * std::pow(p.a, 4), 0.0, false};
        }
        ClosedFormCoeffs operator()(const RosenMorse& p) const {
            const double at = p.a_tilde(c);
            const double t0 = -p.B / (p.A * at);
            const double s0sq = 1.0 - t0 * t0;
            const double s04 = s0sq * s0sq;
            const double omega =
                std::sqrt(2.0 * p.a * p.a * p.A * at * s04 / c.mass);
            const double alpha = 6.0 * std::pow(p.a, 3) * p.B * s04;
            const double beta = (4.0 / 3.0) * std::pow(p.a, 4) * p.A * at * s04 *
                                (9.0 * t0 * t0 - 2.0);
            return {omega, alpha, beta, 0.0, p.B == 0.0};
        }
        ClosedFormCoeffs operator()(const LJFamily& p) const {
            const double x0 = min.x0;
            const double k = p.k;
            const double omega = (k / std::sqrt(2.0)) * std::pow(2.0, -1.0 / k) *
                                 std::sqrt(p.v0 / (c.mass * p.a * p.a));
            const double alpha = -0.75 * p.v0 * k * k * (k + 1.0) / std::pow(x0, 3);
            const double beta =
                p.v0 * k * k * (k + 1.0) * (7.0 * k + 11.0) / (12.0 * std::pow(x0, 4));
            return {omega, alpha, beta, 0.0, false};
        }
        ClosedFormCoeffs operator()(const Polynomial& p) const {
            const double scale =
                fdLengthScale > 0.0 ? fdLengthScale : (p.searchHi - p.searchLo) / 20.0;
            return fd_coefficients(spec, min.x0, order, scale);
        }
        ClosedFormCoeffs operator()(const ExpressionPotential& p) const {
            const double scale =
                fdLengthScale > 0.0 ? fdLengthScale : (p.searchHi - p.searchLo) / 20.0;
            return fd_coefficients(spec, min.x0, order, scale);
        }
    };

    const ClosedFormCoeffs cf =
        std::visit(Visitor{spec, c, min, order, fdLengthScale}, spec.kind);

    WellExpansion w;
    w.x0 = min.x0;
    w.vMin = min.vMin;
    w.omega = cf.omega;
    w.alpha = cf.alpha;
    w.beta = cf.beta;
    w.gamma = (order >= 6) ? cf.gamma : 0.0;
    w.constants = c;

    if (order >= 6 && !w.symmetric()) {
        throw VariantMismatchError(
            "expand_well: order 6 requires a reflection-symmetric well (alpha = 0)");
    }
    return w;
}

std::pair<TurningPointSeries, TurningPointSeries>
turning_points_series(const WellExpansion& w, double energyAboveMin) {
    if (!(energyAboveMin > 0.0))
        throw InvalidEnergyError("turning_points_series: energy above minimum must be positive");

    const double mw2 = w.constants.mass * w.omega * w.omega;
    const double a0 = std::sqrt(2.0 * energyAboveMin / mw2);

    TurningPointSeries right, left;
    right.a0 = a0;
    left.a0 = -a0;

    if (w.symmetric()) {
        // a = a0 + beta a1 + beta^2 a2 + gamma a3
        const double a1 = -std::pow(a0, 3) / (4.0 * mw2);
        const double a2 = (7.0 / 32.0) * std::pow(a0, 5) / (mw2 * mw2);
        const double a3 = -std::pow(a0, 5) / (6.0 * mw2);
        right.betaTerm = w.beta * a1;
        right.beta2Term = w.beta * w.beta * a2;
        right.gammaTerm = w.gamma * a3;
        left.betaTerm = -right.betaTerm;
        left.beta2Term = -right.beta2Term;
        left.gammaTerm = -right.gammaTerm;
    } else {
        const double shift = -w.alpha * a0 * a0 / (3.0 * mw2);
        const double quad =
            (5.0 / 18.0) * w.alpha * w.alpha * std::pow(a0 * a0 / mw2, 2) / a0;
        const double quart = w.beta * std::pow(a0, 3) / (4.0 * mw2);
        right.alphaTerm = shift;
        right.alpha2Term = quad;
        right.betaTerm = -quart;
        left.alphaTerm = shift;
        left.alpha2Term = -quad;
        left.betaTerm = quart;
    }
    return {left, right};
}

double action_series(const WellExpansion& w, double energyAboveMin,
                     SeriesVariant variant) {
    if (!(energyAboveMin > 0.0))
        throw InvalidEnergyError("action_series: energy above minimum must be positive");

    const double m = w.constants.mass;
    const double E = energyAboveMin;

    if (variant == SeriesVariant::cubicQuartic) {
        return 2.0 * kPi * E / w.omega +
               (5.0 * kPi / 6.0) * w.alpha * w.alpha * E * E /
                   (std::pow(m, 3) * std::pow(w.omega, 7)) -
               (3.0 * kPi / 4.0) * w.beta * E * E / (m * m * std::pow(w.omega, 5));
    }

    if (!w.symmetric())
        throw VariantMismatchError("action_series: symmetricSextic requires alpha = 0");
    const double mw2 = m * w.omega * w.omega;
    const double e2 = E * E / (mw2 * mw2);
    return (2.0 * kPi / w.omega) *
           (E - (3.0 * w.beta / 8.0) * e2 +
            (35.0 / 64.0) * w.beta * w.beta * e2 * E / (mw2 * mw2) -
            (5.0 / 12.0) * w.gamma * e2 * E / mw2);
}

double perturbative_energy(const WellExpansion& w, int n, SeriesVariant variant,
                           MaslovShift shift) {
    if (n < 0)
        throw std::invalid_argument("perturbative_energy: n must be non-negative");

    const double nu = shift == MaslovShift::halfInteger ? n + 0.5 : double(n);
    const double hbar = w.constants.hbar;
    const double m = w.constants.mass;
    const double e0 = nu * hbar * w.omega;

    if (variant == SeriesVariant::cubicQuartic)
        return w.vMin + e0 - quadratic_coefficient(w) * nu * nu;

    if (!w.symmetric())
        throw VariantMismatchError(
            "perturbative_energy: symmetricSextic requires alpha = 0");
    const double mw2 = m * w.omega * w.omega;
    return w.vMin + e0 + (3.0 / 8.0) * w.beta * e0 * e0 / (mw2 * mw2) -
           (17.0 / 64.0) * w.beta * w.beta * std::pow(e0, 3) / std::pow(mw2, 4) +
           (5.0 / 12.0) * w.gamma * std::pow(e0, 3) / std::pow(mw2, 3);
}

double quadratic_coefficient(const WellExpansion& w) {
    const double hbar2 = w.constants.hbar * w.constants.hbar;
    const double m = w.constants.mass;
    return (5.0 / 12.0) * w.alpha * w.alpha * hbar2 /
               (std::pow(m, 3) * std::pow(w.omega, 4)) -
           (3.0 / 8.0) * w.beta * hbar2 / (m * m * w.omega * w.omega);
}

} // namespace bsq
