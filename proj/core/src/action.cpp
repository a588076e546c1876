#include "bsq/action.hpp"

#include "bsq/errors.hpp"
#include "bsq/gamma.hpp"
#include "bsq/well_series.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kMaxSegments = 1L << 21;

void invalid_energy(const char* op, double e) {
    std::ostringstream os;
    os << op << ": E = " << e << " outside the two-turning-point window";
    throw InvalidEnergyError(os.str());
}

// Domain walls that bracket the well; marching never steps past them.
std::pair<double, double> hard_walls(const PotentialSpec& spec) {
    if (const auto* trig = std::get_if<PoschlTellerTrig>(&spec.kind)) {
        const double w = 0.5 * kPi / trig->a;
        return {-w, w};
    }
    if (std::holds_alternative<LJFamily>(spec.kind))
        return {0.0, kInf};
    if (const auto* poly = std::get_if<Polynomial>(&spec.kind))
        return {poly->searchLo, poly->searchHi};
    if (const auto* ex = std::get_if<ExpressionPotential>(&spec.kind))
        return {ex->searchLo, ex->searchHi};
    return {-kInf, kInf};
}

// Trapezoid with node doubling; returns the refined value and the last
// doubling difference as the error estimate.
struct QuadratureOutcome {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
QuadratureOutcome trapezoid_doubling(F&& g, double a, double b, long initialSegments,
                                     double relTarget) {
    long n = std::max<long>(initialSegments, 16);
    double h = (b - a) / static_cast<double>(n);

    auto kahan_row = [&](double start, double step, long count) {
        double sum = 0.0, comp = 0.0;
        for (long i = 0; i < count; ++i) {
            const double term = g(start + step * static_cast<double>(i)) - comp;
            const double next = sum + term;
            comp = (next - sum) - term;
            sum = next;
        }
        return sum;
    };

    double total = 0.5 * (g(a) + g(b)) + kahan_row(a + h, h, n - 1);
    double value = total * h;

    double prevErr = kInf;
    int stalls = 0;
    for (;;) {
        const double mids = kahan_row(a + 0.5 * h, h, n);
        total += mids;
        n *= 2;
        h *= 0.5;
        const double refined = total * h;
        const double err = std::fabs(refined - value);
        value = refined;

        if (err <= relTarget * std::fabs(value) + 1e-300)
            return {value, err};
        stalls = (err > 0.5 * prevErr) ? stalls + 1 : 0;
        if (stalls >= 2 && err <= 1e-8 * std::fabs(value))
            return {value, err}; // roundoff plateau below the contract bound
        if (n >= kMaxSegments)
            return {value, err};
        prevErr = err;
    }
}

// Open midpoint rule (no endpoint evaluations), fixed node count.
template <class F>
double midpoint_rule(F&& g, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.0, comp = 0.0;
    for (long i = 0; i < n; ++i) {
        const double term = g(a + (i + 0.5) * h) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum * h;
}

double quadrature_target(const QuantizerSettings& s) {
    return std::clamp(0.05 * s.rootTolerance, 5e-14, 1e-7);
}

struct WellFrame {
    double x0;
    double vMin;
    double ceiling; // upper edge of the quantization window
};

WellFrame well_frame(const PotentialSpec& spec) {
    const WellMinimum m = well_minimum(spec);
    return {m.x0, m.vMin, quantization_ceiling(spec)};
}

// ---------------------------------------------------------------------------
// LJ closed-form turning points and log-variable quadrature
// ---------------------------------------------------------------------------

struct LJFrame {
    double epsilon; // |E|/V0
    double y1, y2;  // turning points in y = (a/x)^k, y1 < y2
};

LJFrame lj_frame(const LJFamily& p, double energy) {
    const double eps = -energy / p.v0;
    const double disc = 1.0 - 4.0 * eps;
    if (!(eps > 0.0) || !(disc > 0.0))
        invalid_energy("action", energy);
    const double root = std::sqrt(disc);
    return {eps, 0.5 * (1.0 - root), 0.5 * (1.0 + root)};
}

double lj_x_from_y(const LJFamily& p, double y) {
    return p.a * std::pow(y, -1.0 / p.k);
}

double expm1_ratio(double d) { return d == 0.0 ? 1.0 : std::expm1(d) / d; }

// J = P * Integral over u = ln y of sqrt((y-y1)(y2-y)) y^{-1/k} du,
// P = 2 a sqrt(2 m V0) / k; the sine substitution in u removes the root.
template <class Body>
auto lj_integrand(const LJFamily& p, const LJFrame& f, Body body) {
    const double u1 = std::log(f.y1);
    const double u2 = std::log(f.y2);
    const double c = 0.5 * (u1 + u2);
    const double r = 0.5 * (u2 - u1);
    return [=, k = double(p.k)](double phi) {
        const double u = c + r * std::sin(phi);
        const double y = std::exp(u);
        const double left = f.y1 * expm1_ratio(u - u1);        // (y - y1)/(u - u1)
        const double right = f.y2 * expm1_ratio(-(u2 - u));    // (y2 - y)/(u2 - u)
        const double cosphi = std::cos(phi);
        return body(y, r * r * cosphi * cosphi, std::sqrt(left * right), k);
    };
}

double lj_prefactor(const LJFamily& p, const Constants& c) {
    return 2.0 * p.a * std::sqrt(2.0 * c.mass * p.v0) / p.k;
}

// ---------------------------------------------------------------------------
// Generic turning points by marching + bisection + Newton polish
// ---------------------------------------------------------------------------

double polish_root(const PotentialSpec& spec, double x, double energy, double lo,
                   double hi) {
    for (int i = 0; i < 3; ++i) {
        const double dv = evaluate_derivative(spec, x);
        if (dv == 0.0 || !std::isfinite(dv))
            break;
        const double next = x - (evaluate(spec, x) - energy) / dv;
        if (!(next > lo) || !(next < hi))
            break;
        x = next;
    }
    return x;
}

double march_to_root(const PotentialSpec& spec, double x0, double energy, int dir,
                     double wall, int maxSteps) {
    double step = 0.01 * (1.0 + std::fabs(x0));
    double prev = x0;
    for (int i = 0; i < maxSteps; ++i) {
        double probe = x0 + dir * step;
        bool clamped = false;
        if (dir > 0 && probe >= wall) {
            probe = wall - 1e-12 * (std::fabs(wall) + 1.0);
            clamped = true;
        } else if (dir < 0 && probe <= wall) {
            probe = wall + 1e-12 * (std::fabs(wall) + 1.0);
            clamped = true;
        }
        const double v = evaluate(spec, probe);
        if (v >= energy) {
            const double lo = std::min(prev, probe);
            const double hi = std::max(prev, probe);
            const double root = detail::bisect(
                [&](double u) { return evaluate(spec, u) - energy; }, lo, hi);
            return polish_root(spec, root, energy, lo, hi);
        }
        if (clamped)
            throw InvalidEnergyError(
                "turning_points: no turning point before the domain wall");
        prev = probe;
        step *= 2.0;
    }
    throw InvalidEnergyError("turning_points: failed to bracket a turning point");
}

} // namespace

void QuantizerSettings::validate() const {
    if (!(rootTolerance > 0.0) || rootTolerance > 1e-3)
        throw std::invalid_argument("QuantizerSettings: rootTolerance must lie in (0, 1e-3]");
    if (quadraturePoints < 16)
        throw std::invalid_argument("QuantizerSettings: quadraturePoints must be >= 16");
    if (maxBisections < 8)
        throw std::invalid_argument("QuantizerSettings: maxBisections must be >= 8");
}

double quantization_ceiling(const PotentialSpec& spec) {
    struct Visitor {
        const PotentialSpec& spec;

        double operator()(const Harmonic&) const { return kInf; }
        double operator()(const PoschlTeller&) const { return 0.0; }
        double operator()(const PoschlTellerTrig&) const { return kInf; }
        double operator()(const Morse&) const { return 0.0; }
        double operator()(const RosenMorse& p) const {
            // both turning points exist only below the lower asymptote
            return p.A * p.A + p.B * p.B / (p.A * p.A) - 2.0 * std::fabs(p.B);
        }
        double operator()(const LJFamily&) const { return 0.0; }
        double operator()(const Polynomial& p) const {
            try {
                const DissociationEnergy d = dissociation_energy(spec);
                return d.unbounded ? kInf : d.value;
            } catch (const NotAvailableError&) {
                return std::min(evaluate(spec, p.searchLo), evaluate(spec, p.searchHi));
            }
        }
        double operator()(const ExpressionPotential& p) const {
            return std::min(evaluate(spec, p.searchLo), evaluate(spec, p.searchHi));
        }
    };
    return std::visit(Visitor{spec}, spec.kind);
}

std::pair<double, double> turning_points_numeric(const PotentialSpec& spec, double energy,
                                                 const QuantizerSettings& settings) {
    settings.validate();
    const WellFrame frame = well_frame(spec);
    if (!(energy > frame.vMin) || !(energy < frame.ceiling))
        invalid_energy("turning_points_numeric", energy);

    if (const auto* lj = std::get_if<LJFamily>(&spec.kind)) {
        const LJFrame f = lj_frame(*lj, energy);
        // y decreases with x, so y2 maps to the left turning point
        return {lj_x_from_y(*lj, f.y2), lj_x_from_y(*lj, f.y1)};
    }

    const auto [wallLo, wallHi] = hard_walls(spec);
    const double xl =
        march_to_root(spec, frame.x0, energy, -1, wallLo, settings.maxBisections);
    const double xr =
        march_to_root(spec, frame.x0, energy, +1, wallHi, settings.maxBisections);
    return {xl, xr};
}

namespace {

QuadratureOutcome action_quadrature(const PotentialSpec& spec, double energy,
                                    const QuantizerSettings& settings, double relTarget,
                                    double* xlOut, double* xrOut) {
    const Constants& c = spec.constants;

    if (const auto* lj = std::get_if<LJFamily>(&spec.kind)) {
        const LJFrame f = lj_frame(*lj, energy);
        if (xlOut) *xlOut = lj_x_from_y(*lj, f.y2);
        if (xrOut) *xrOut = lj_x_from_y(*lj, f.y1);
        auto g = lj_integrand(*lj, f,
                              [](double y, double rcos2, double sqrtH, double k) {
                                  return rcos2 * sqrtH * std::pow(y, -1.0 / k);
                              });
        QuadratureOutcome out = trapezoid_doubling(g, -0.5 * kPi, 0.5 * kPi,
                                                   settings.quadraturePoints, relTarget);
        const double pre = lj_prefactor(*lj, c);
        return {pre * out.value, pre * out.error};
    }

    const auto [xl, xr] = turning_points_numeric(spec, energy, settings);
    if (xlOut) *xlOut = xl;
    if (xrOut) *xrOut = xr;
    const double mid = 0.5 * (xl + xr);
    const double half = 0.5 * (xr - xl);
    auto g = [&, mid, half](double theta) {
        const double x = mid + half * std::sin(theta);
        const double k = 2.0 * c.mass * (energy - evaluate(spec, x));
        return 2.0 * std::sqrt(std::max(0.0, k)) * half * std::cos(theta);
    };
    return trapezoid_doubling(g, -0.5 * kPi, 0.5 * kPi, settings.quadraturePoints,
                              relTarget);
}

} // namespace

ActionResult action_integral(const PotentialSpec& spec, double energy,
                             const QuantizerSettings& settings) {
    settings.validate();
    const WellFrame frame = well_frame(spec);
    if (!(energy > frame.vMin) || !(energy < frame.ceiling))
        invalid_energy("action_integral", energy);

    double xl = 0.0, xr = 0.0;
    const QuadratureOutcome out = action_quadrature(
        spec, energy, settings, quadrature_target(settings), &xl, &xr);
    if (out.error > 1e-8 * std::fabs(out.value)) {
        std::ostringstream os;
        os << "action_integral: quadrature stuck at relative error "
           << out.error / std::fabs(out.value);
        throw AccuracyError(os.str());
    }
    return {energy, out.value, xl, xr, out.error};
}

double classical_period(const PotentialSpec& spec, double energy,
                        const QuantizerSettings& settings) {
    settings.validate();
    const WellFrame frame = well_frame(spec);
    if (!(energy > frame.vMin) || !(energy < frame.ceiling))
        invalid_energy("classical_period", energy);
    const Constants& c = spec.constants;

    if (const auto* lj = std::get_if<LJFamily>(&spec.kind)) {
        const LJFrame f = lj_frame(*lj, energy);
        auto g = lj_integrand(*lj, f,
                              [](double y, double, double sqrtH, double k) {
                                  return std::pow(y, -1.0 / k) / sqrtH;
                              });
        const double val = midpoint_rule(g, -0.5 * kPi, 0.5 * kPi, 2048);
        return lj_prefactor(*lj, c) * val / (2.0 * lj->v0);
    }

    const auto [xl, xr] = turning_points_numeric(spec, energy, settings);
    const double mid = 0.5 * (xl + xr);
    const double half = 0.5 * (xr - xl);
    auto g = [&, mid, half](double theta) {
        const double x = mid + half * std::sin(theta);
        const double k = 2.0 * c.mass * (energy - evaluate(spec, x));
        if (!(k > 0.0))
            return 0.0;
        return 2.0 * c.mass * half * std::cos(theta) / std::sqrt(k);
    };
    return midpoint_rule(g, -0.5 * kPi, 0.5 * kPi, 2048);
}

double threshold_action_quadrature(const PotentialSpec& spec) {
    const WellFrame frame = well_frame(spec);
    if (!std::isfinite(frame.ceiling))
        throw NotApplicableError("threshold_action: spectrum is unbounded");
    const double depth = frame.ceiling - frame.vMin;

    QuantizerSettings s;
    s.rootTolerance = 1e-10;
    double j[3];
    double offset = 1e-5 * depth;
    for (int i = 0; i < 3; ++i, offset *= 0.25)
        j[i] = action_integral(spec, frame.ceiling - offset, s).action;

    // Aitken extrapolation kills the leading |E - threshold|^p deficit
    const double d1 = j[1] - j[0];
    const double d2 = j[2] - j[1];
    if (d1 == d2)
        return j[2];
    return j[2] + d2 * d2 / (d1 - d2);
}

ThresholdAction threshold_action(const PotentialSpec& spec) {
    const Constants& c = spec.constants;
    if (const auto* morse = std::get_if<Morse>(&spec.kind))
        return {false, 2.0 * kPi * std::sqrt(2.0 * c.mass * morse->v0) / morse->a};
    if (const auto* lj = std::get_if<LJFamily>(&spec.kind)) {
        if (lj->k <= 2)
            return {true, 0.0};
        const double k = lj->k;
        const double omega = (k / std::sqrt(2.0)) * std::pow(2.0, -1.0 / k) *
                             std::sqrt(lj->v0 / (c.mass * lj->a * lj->a));
        const double value = std::sqrt(kPi) * std::pow(2.0, -1.0 / k) *
                             gamma_fn(0.5 - 1.0 / k) / gamma_fn(2.0 - 1.0 / k) *
                             lj->v0 / omega;
        return {false, value};
    }
    if (std::holds_alternative<Harmonic>(spec.kind))
        throw NotApplicableError("threshold_action: harmonic spectrum is unbounded");
    if (std::holds_alternative<PoschlTellerTrig>(spec.kind))
        throw NotApplicableError("threshold_action: trigonometric well is unbounded");
    return {false, threshold_action_quadrature(spec)};
}

SpectrumLevel quantize(const PotentialSpec& spec, int n, const QuantizerSettings& settings) {
    settings.validate();
    if (n < 0)
        throw std::invalid_argument("quantize: n must be non-negative");

    const Constants& c = spec.constants;
    const double target = (n + 0.5) * c.h();
    const WellFrame frame = well_frame(spec);

    if (std::isfinite(frame.ceiling)) {
        const ThresholdAction th = threshold_action(spec);
        if (!th.divergent && !(target < th.value)) {
            std::ostringstream os;
            os << "quantize: n = " << n << " lies beyond the last bound level";
            throw UnboundError(os.str());
        }
    }

    const double depth =
        std::isfinite(frame.ceiling) ? frame.ceiling - frame.vMin : 1.0 + std::fabs(frame.vMin);
    double lo = frame.vMin + 1e-12 * depth;
    double hi;

    QuantizerSettings coarse = settings;
    coarse.rootTolerance = 1e-4; // relaxed quadrature while bracketing
    auto coarseAction = [&](double e) {
        return action_quadrature(spec, e, coarse, 1e-6, nullptr, nullptr).value;
    };

    if (std::isfinite(frame.ceiling)) {
        hi = frame.ceiling - 1e-12 * depth;
    } else {
        // grow the bracket until J(hi) passes the target
        double span = depth;
        hi = frame.vMin + span;
        for (int i = 0; i < 200 && coarseAction(hi) < target; ++i) {
            span *= 2.0;
            hi = frame.vMin + span;
        }
    }

    // bisection to ~1e-3 of the window, then Newton with dJ/dE = period
    for (int i = 0; i < settings.maxBisections && (hi - lo) > 1e-3 * (hi - frame.vMin); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (coarseAction(mid) < target)
            lo = mid;
        else
            hi = mid;
    }

    const double relTarget = quadrature_target(settings);
    double e = 0.5 * (lo + hi);
    double resid = 0.0;
    for (int i = 0; i < settings.maxBisections; ++i) {
        const QuadratureOutcome out =
            action_quadrature(spec, e, settings, relTarget, nullptr, nullptr);
        resid = out.value - target;
        if (std::fabs(resid) <= settings.rootTolerance * target)
            return {n, e, Method::numericBS};
        if (resid > 0.0)
            hi = e;
        else
            lo = e;
        const double period = classical_period(spec, e, settings);
        double next = e - resid / period;
        if (!(next > lo) || !(next < hi))
            next = 0.5 * (lo + hi);
        if (std::fabs(next - e) <=
            std::numeric_limits<double>::epsilon() * (std::fabs(e) + depth)) {
            e = next;
            break; // step collapsed to roundoff; residual sits at the quadrature floor
        }
        e = next;
    }

    if (std::fabs(resid) > std::max(100.0 * settings.rootTolerance, 1e-7) * target) {
        std::ostringstream os;
        os << "quantize: did not converge for n = " << n
           << " (|J - target|/target = " << std::fabs(resid) / target << ")";
        throw AccuracyError(os.str());
    }
    return {n, e, Method::numericBS};
}

LevelCount level_count(const PotentialSpec& spec) {
    const DissociationEnergy d = dissociation_energy(spec);
    if (d.unbounded)
        throw NotApplicableError("level_count: spectrum is unbounded");
    const ThresholdAction th = threshold_action(spec);
    if (th.divergent)
        return {false, 0};
    const double ratio = th.value / spec.constants.h();
    const int count = static_cast<int>(std::floor(ratio - 0.5)) + 1;
    return {true, std::max(0, count)};
}

} // namespace bsq
