#include "bsq/potential.hpp"

#include "bsq/errors.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bsq {

namespace {

[[noreturn]] void domain_fail(const char* kind, double x) {
    std::ostringstream os;
    os << kind << ": x = " << x << " outside the potential's domain";
    throw DomainError(os.str());
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(what) + " must be positive");
}

double poly_eval(const std::vector<double>& c, double u) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * u + *it;
    return acc;
}

double poly_eval_derivative(const std::vector<double>& c, double u) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 1;)
        acc = acc * u + static_cast<double>(j) * c[j];
    return acc;
}

// Morse / Poschl-Teller style bound count: largest n with t(n) = (n+1/2)*step
// strictly below the cap; -1 when none.
int last_level_below(double cap, double step) {
    if (!(cap > 0.5 * step))
        return -1;
    const double nu = cap / step; // bound levels have n + 1/2 < nu
    int n = static_cast<int>(std::floor(nu - 0.5));
    while (n >= 0 && (n + 0.5) * step >= cap)
        --n;
    return n;
}

} // namespace

std::string_view method_name(Method m) {
    switch (m) {
    case Method::perturbative: return "perturbative";
    case Method::numericBS: return "numericBS";
    case Method::asymptoticFit: return "asymptoticFit";
    case Method::oracle: return "oracle";
    case Method::exactClosedForm: return "exactClosedForm";
    }
    return "?";
}

Harmonic::Harmonic(double omega_) : omega(omega_) { require_positive(omega, "Harmonic: omega"); }

PoschlTeller::PoschlTeller(double v0_, double a_) : v0(v0_), a(a_) {
    require_positive(v0, "PoschlTeller: V0");
    require_positive(a, "PoschlTeller: a");
}

PoschlTellerTrig::PoschlTellerTrig(double v0_, double a_) : v0(v0_), a(a_) {
    require_positive(v0, "PoschlTellerTrig: V0");
    require_positive(a, "PoschlTellerTrig: a");
}

Morse::Morse(double v0_, double a_) : v0(v0_), a(a_) {
    require_positive(v0, "Morse: V0");
    require_positive(a, "Morse: a");
}

RosenMorse::RosenMorse(double A_, double B_, double a_) : A(A_), B(B_), a(a_) {
    require_positive(A, "RosenMorse: A");
    require_positive(a, "RosenMorse: a");
}

double RosenMorse::a_tilde(const Constants& c) const {
    return A + a * c.hbar / std::sqrt(2.0 * c.mass);
}

LJFamily::LJFamily(double v0_, double a_, int k_) : v0(v0_), a(a_), k(k_) {
    require_positive(v0, "LJFamily: V0");
    require_positive(a, "LJFamily: a");
    if (k < 1)
        throw std::invalid_argument("LJFamily: k must be a positive integer");
}

Polynomial::Polynomial(std::vector<double> coeffs_, double center_)
    : Polynomial(std::move(coeffs_), center_, center_ - 10.0, center_ + 10.0) {}

Polynomial::Polynomial(std::vector<double> coeffs_, double center_, double lo, double hi)
    : coeffs(std::move(coeffs_)), center(center_), searchLo(lo), searchHi(hi) {
    if (coeffs.empty())
        throw std::invalid_argument("Polynomial: needs at least one coefficient");
    if (!(searchLo < searchHi))
        throw std::invalid_argument("Polynomial: search interval must be nonempty");
}

ExpressionPotential::ExpressionPotential(expr::Ast ast_, double lo, double hi)
    : ast(std::move(ast_)), searchLo(lo), searchHi(hi) {
    if (ast.empty())
        throw std::invalid_argument("ExpressionPotential: empty expression");
    if (!(searchLo < searchHi))
        throw std::invalid_argument("ExpressionPotential: search interval must be nonempty");
}

std::string kind_name(const PotentialSpec& spec) {
    struct Visitor {
        std::string operator()(const Harmonic&) const { return "harmonic"; }
        std::string operator()(const PoschlTeller&) const { return "poschl_teller"; }
        std::string operator()(const PoschlTellerTrig&) const { return "poschl_teller_trig"; }
        std::string operator()(const Morse&) const { return "morse"; }
        std::string operator()(const RosenMorse&) const { return "rosen_morse"; }
        std::string operator()(const LJFamily& p) const {
            return "lj" + std::to_string(2 * p.k) + "-" + std::to_string(p.k);
        }
        std::string operator()(const Polynomial&) const { return "polynomial"; }
        std::string operator()(const ExpressionPotential&) const { return "expression"; }
    };
    return std::visit(Visitor{}, spec.kind);
}

double evaluate(const PotentialSpec& spec, double x) {
    const Constants& c = spec.constants;
    struct Visitor {
        double x;
        const Constants& c;

        double operator()(const Harmonic& p) const {
            return 0.5 * c.mass * p.omega * p.omega * x * x;
        }
        double operator()(const PoschlTeller& p) const {
            const double s = 1.0 / std::cosh(p.a * x);
            return -p.v0 * s * s;
        }
        double operator()(const PoschlTellerTrig& p) const {
            if (!(std::fabs(x) < 0.5 * std::numbers::pi / p.a))
                domain_fail("poschl_teller_trig", x);
            const double s = 1.0 / std::cos(p.a * x);
            return p.v0 * s * s;
        }
        double operator()(const Morse& p) const {
            const double u = std::exp(-p.a * x);
            return p.v0 * u * (u - 2.0);
        }
        double operator()(const RosenMorse& p) const {
            const double at = p.a_tilde(c);
            const double t = std::tanh(p.a * x);
            const double s = 1.0 / std::cosh(p.a * x);
            return p.A * p.A + p.B * p.B / (p.A * p.A) + 2.0 * p.B * t -
                   p.A * at * s * s;
        }
        double operator()(const LJFamily& p) const {
            if (!(x > 0.0))
                domain_fail("lj", x);
            const double y = std::pow(p.a / x, p.k);
            return p.v0 * y * (y - 1.0);
        }
        double operator()(const Polynomial& p) const {
            return poly_eval(p.coeffs, x - p.center);
        }
        double operator()(const ExpressionPotential& p) const { return p.ast.eval(x); }
    };
    return std::visit(Visitor{x, c}, spec.kind);
}

double evaluate_derivative(const PotentialSpec& spec, double x) {
    const Constants& c = spec.constants;
    struct Visitor {
        double x;
        const Constants& c;

        double operator()(const Harmonic& p) const { return c.mass * p.omega * p.omega * x; }
        double operator()(const PoschlTeller& p) const {
            const double s = 1.0 / std::cosh(p.a * x);
            return 2.0 * p.a * p.v0 * s * s * std::tanh(p.a * x);
        }
        double operator()(const PoschlTellerTrig& p) const {
            if (!(std::fabs(x) < 0.5 * std::numbers::pi / p.a))
                domain_fail("poschl_teller_trig", x);
            const double s = 1.0 / std::cos(p.a * x);
            return 2.0 * p.a * p.v0 * s * s * std::tan(p.a * x);
        }
        double operator()(const Morse& p) const {
            const double u = std::exp(-p.a * x);
            return 2.0 * p.a * p.v0 * u * (1.0 - u);
        }
        double operator()(const RosenMorse& p) const {
            const double at = p.a_tilde(c);
            const double t = std::tanh(p.a * x);
            const double s = 1.0 / std::cosh(p.a * x);
            return 2.0 * p.a * s * s * (p.B + p.A * at * t);
        }
        double operator()(const LJFamily& p) const {
            if (!(x > 0.0))
                domain_fail("lj", x);
            const double y = std::pow(p.a / x, p.k);
            return -p.k * p.v0 * y * (2.0 * y - 1.0) / x;
        }
        double operator()(const Polynomial& p) const {
            return poly_eval_derivative(p.coeffs, x - p.center);
        }
        double operator()(const ExpressionPotential& p) const {
            const double scale = (p.searchHi - p.searchLo) / 100.0;
            return detail::fd_derivative([&](double u) { return p.ast.eval(u); }, x, 1,
                                         scale);
        }
    };
    return std::visit(Visitor{x, c}, spec.kind);
}

namespace {

WellMinimum numeric_minimum(const PotentialSpec& spec, double lo, double hi) {
    auto f = [&](double u) { return evaluate(spec, u); };
    const double xtol = (hi - lo) * 1e-12;
    double x0 = detail::golden_section_min(f, lo, hi, xtol);

    // Newton polish on V'
    const double scale = (hi - lo) / 20.0;
    for (int i = 0; i < 4; ++i) {
        const double d1 = detail::fd_derivative(f, x0, 1, scale);
        const double d2 = detail::fd_derivative(f, x0, 2, scale);
        if (!(d2 > 0.0))
            break;
        const double step = d1 / d2;
        if (!std::isfinite(step) || std::fabs(step) > 0.25 * (hi - lo))
            break;
        x0 -= step;
    }

    const double margin = 1e-6 * (hi - lo);
    if (!(x0 > lo + margin) || !(x0 < hi - margin))
        throw NoWellError("well_minimum: no interior minimum in the search interval");
    const double d2 = detail::fd_derivative(f, x0, 2, scale);
    if (!(d2 > 0.0))
        throw NoWellError("well_minimum: stationary point is not a minimum");
    return {x0, evaluate(spec, x0)};
}

} // namespace

WellMinimum well_minimum(const PotentialSpec& spec) {
    const Constants& c = spec.constants;
    struct Visitor {
        const PotentialSpec& spec;
        const Constants& c;

        WellMinimum operator()(const Harmonic&) const { return {0.0, 0.0}; }
        WellMinimum operator()(const PoschlTeller& p) const { return {0.0, -p.v0}; }
        WellMinimum operator()(const PoschlTellerTrig& p) const { return {0.0, p.v0}; }
        WellMinimum operator()(const Morse& p) const { return {0.0, -p.v0}; }
        WellMinimum operator()(const RosenMorse& p) const {
            const double at = p.a_tilde(c);
            if (!(std::fabs(p.B) < p.A * at))
                throw NoWellError("rosen_morse: no well (requires |B| < A*Atilde)");
            const double x0 = std::atanh(-p.B / (p.A * at)) / p.a;
            return {x0, evaluate(spec, x0)};
        }
        WellMinimum operator()(const LJFamily& p) const {
            const double x0 = p.a * std::pow(2.0, 1.0 / p.k);
            return {x0, -0.25 * p.v0};
        }
        WellMinimum operator()(const Polynomial& p) const {
            return numeric_minimum(spec, p.searchLo, p.searchHi);
        }
        WellMinimum operator()(const ExpressionPotential& p) const {
            return numeric_minimum(spec, p.searchLo, p.searchHi);
        }
    };
    return std::visit(Visitor{spec, c}, spec.kind);
}

std::optional<int> highest_closed_form_level(const PotentialSpec& spec) {
    const Constants& c = spec.constants;
    struct Visitor {
        const Constants& c;
        using R = std::optional<int>;

        R operator()(const Harmonic&) const { return std::nullopt; }
        R operator()(const PoschlTeller& p) const {
            const double r = 8.0 * c.mass * p.v0 / (p.a * p.a * c.hbar * c.hbar);
            // bound requires 2n + 1 < sqrt(1 + r)
            return last_level_below(0.5 * std::sqrt(1.0 + r), 1.0);
        }
        R operator()(const PoschlTellerTrig&) const { return std::nullopt; }
        R operator()(const Morse& p) const {
            const double cap = std::sqrt(p.v0); // sqrt(V0) > (n+1/2) a hbar / sqrt(2m)
            const double step = p.a * c.hbar / std::sqrt(2.0 * c.mass);
            return last_level_below(cap, step);
        }
        R operator()(const RosenMorse& p) const {
            if (!(std::fabs(p.B) < p.A * p.a_tilde(c)))
                throw NoWellError("rosen_morse: no well (requires |B| < A*Atilde)");
            const double cap = p.A - std::sqrt(std::fabs(p.B));
            const double step = p.a * c.hbar / std::sqrt(2.0 * c.mass);
            return last_level_below(cap, step);
        }
        R operator()(const LJFamily& p) const {
            if (p.k != 1)
                throw NotAvailableError("exact_energy: no closed form for LJ with k != 1");
            return std::nullopt;
        }
        R operator()(const Polynomial&) const {
            throw NotAvailableError("exact_energy: no closed form for polynomial kinds");
        }
        R operator()(const ExpressionPotential&) const {
            throw NotAvailableError("exact_energy: no closed form for expression kinds");
        }
    };
    return std::visit(Visitor{c}, spec.kind);
}

double exact_energy(const PotentialSpec& spec, int n) {
    if (n < 0)
        throw std::invalid_argument("exact_energy: n must be non-negative");
    const Constants& c = spec.constants;

    const std::optional<int> nMax = highest_closed_form_level(spec);
    if (nMax && n > *nMax) {
        std::ostringstream os;
        os << "exact_energy: n = " << n << " above the last bound level " << *nMax;
        throw UnboundError(os.str());
    }

    struct Visitor {
        int n;
        const Constants& c;

        double operator()(const Harmonic& p) const { return (n + 0.5) * c.hbar * p.omega; }
        double operator()(const PoschlTeller& p) const {
            const double pre = p.a * p.a * c.hbar * c.hbar / (8.0 * c.mass);
            const double r = 8.0 * c.mass * p.v0 / (p.a * p.a * c.hbar * c.hbar);
            const double bracket = 2.0 * n + 1.0 - std::sqrt(1.0 + r);
            return -pre * bracket * bracket;
        }
        double operator()(const PoschlTellerTrig& p) const {
            const double omega = p.a * std::sqrt(2.0 * p.v0 / c.mass);
            const double root = std::sqrt(p.v0) +
                                (n + 0.5) * c.hbar * omega / (2.0 * std::sqrt(p.v0));
            return root * root;
        }
        double operator()(const Morse& p) const {
            const double root =
                std::sqrt(p.v0) - (n + 0.5) * c.hbar * p.a / std::sqrt(2.0 * c.mass);
            return -root * root;
        }
        double operator()(const RosenMorse& p) const {
            const double t = (n + 0.5) * c.hbar * p.a / std::sqrt(2.0 * c.mass);
            const double d = p.A - t;
            return p.A * p.A - d * d +
                   p.B * p.B * (1.0 / (p.A * p.A) - 1.0 / (d * d));
        }
        double operator()(const LJFamily& p) const {
            // k = 1 only (enforced above); omega = 2^{-3/2} sqrt(V0 / (m a^2))
            const double omega =
                std::sqrt(p.v0 / (c.mass * p.a * p.a)) / (2.0 * std::sqrt(2.0));
            const double q = 1.0 + (2.0 * n + 1.0) * c.hbar * omega / p.v0;
            return -0.25 * p.v0 / (q * q);
        }
        double operator()(const Polynomial&) const { return 0.0; } // unreachable
        double operator()(const ExpressionPotential&) const { return 0.0; } // unreachable
    };
    return std::visit(Visitor{n, c}, spec.kind);
}

DissociationEnergy dissociation_energy(const PotentialSpec& spec) {
    struct Visitor {
        const Constants& c;

        DissociationEnergy operator()(const Harmonic&) const { return {true, 0.0}; }
        DissociationEnergy operator()(const PoschlTeller&) const { return {false, 0.0}; }
        DissociationEnergy operator()(const PoschlTellerTrig&) const { return {true, 0.0}; }
        DissociationEnergy operator()(const Morse&) const { return {false, 0.0}; }
        DissociationEnergy operator()(const RosenMorse& p) const {
            // x -> +inf limit of the potential
            return {false, p.A * p.A + p.B * p.B / (p.A * p.A) + 2.0 * p.B};
        }
        DissociationEnergy operator()(const LJFamily&) const { return {false, 0.0}; }
        DissociationEnergy operator()(const Polynomial& p) const {
            int lead = -1;
            for (int j = static_cast<int>(p.coeffs.size()) - 1; j >= 0; --j)
                if (p.coeffs[j] != 0.0) {
                    lead = j;
                    break;
                }
            if (lead >= 2 && lead % 2 == 0 && p.coeffs[lead] > 0.0)
                return {true, 0.0};
            throw NotAvailableError(
                "dissociation_energy: undefined for a polynomial without a positive "
                "leading even term");
        }
        DissociationEnergy operator()(const ExpressionPotential&) const {
            throw NotAvailableError(
                "dissociation_energy: undefined for expression potentials");
        }
    };
    return std::visit(Visitor{spec.constants}, spec.kind);
}

} // namespace bsq
