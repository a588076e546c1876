#pragma once

#include "bsq/constants.hpp"
#include "bsq/expression.hpp"
#include "bsq/spectrum.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bsq {

// ---------------------------------------------------------------------------
// Catalog of well shapes. Scale parameters are validated on construction;
// conditions that involve hbar or m (the Rosen-Morse existence bound) are
// checked by the operations that need them.
// ---------------------------------------------------------------------------

/// V(x) = (1/2) m omega^2 x^2
struct Harmonic {
    double omega;
    explicit Harmonic(double omega_);
};

/// V(x) = -V0 sech^2(a x)
struct PoschlTeller {
    double v0;
    double a;
    PoschlTeller(double v0_, double a_);
};

/// V(x) = V0 sec^2(a x) on |x| < pi/(2a)
struct PoschlTellerTrig {
    double v0;
    double a;
    PoschlTellerTrig(double v0_, double a_);
};

/// V(x) = V0 (e^{-2ax} - 2 e^{-ax})
struct Morse {
    double v0;
    double a;
    Morse(double v0_, double a_);
};

/// V(x) = A^2 + B^2/A^2 + 2B tanh(ax) - A (A + a hbar / sqrt(2m)) sech^2(ax)
struct RosenMorse {
    double A;
    double B;
    double a;
    RosenMorse(double A_, double B_, double a_);

    double a_tilde(const Constants& c) const;
};

/// V(x) = V0 [ (a/x)^{2k} - (a/x)^k ] on x > 0
struct LJFamily {
    double v0;
    double a;
    int k;
    LJFamily(double v0_, double a_, int k_);
};

/// V(x) = sum_i coeffs[i] (x - center)^i. The search interval brackets the
/// minimum for the numeric minimizer (defaults to center +/- 10).
struct Polynomial {
    std::vector<double> coeffs;
    double center = 0.0;
    double searchLo;
    double searchHi;
    explicit Polynomial(std::vector<double> coeffs_, double center_ = 0.0);
    Polynomial(std::vector<double> coeffs_, double center_, double lo, double hi);
};

/// User-entered V(x); the search interval doubles as the trusted domain.
struct ExpressionPotential {
    expr::Ast ast;
    double searchLo;
    double searchHi;
    ExpressionPotential(expr::Ast ast_, double lo, double hi);
};

using PotentialKind = std::variant<Harmonic, PoschlTeller, PoschlTellerTrig, Morse,
                                   RosenMorse, LJFamily, Polynomial, ExpressionPotential>;

struct PotentialSpec {
    PotentialKind kind;
    Constants constants{};
};

/// Short human-readable tag ("morse", "lj", ...), used in reports.
std::string kind_name(const PotentialSpec& spec);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// V(x). Throws DomainError outside the kind's domain
/// (x <= 0 for LJFamily, |x| >= pi/(2a) for the trigonometric Poschl-Teller).
double evaluate(const PotentialSpec& spec, double x);

/// dV/dx. Closed forms for catalog kinds and polynomials; central finite
/// differences for expression potentials.
double evaluate_derivative(const PotentialSpec& spec, double x);

struct WellMinimum {
    double x0;
    double vMin;
};

/// Location and depth of the well minimum. Throws NoWellError when the
/// potential admits none (Rosen-Morse with |B| >= A*Atilde, monotone custom potentials).
WellMinimum well_minimum(const PotentialSpec& spec);

/// Closed-form eigenvalue where one exists: Poschl-Teller (both forms),
/// Morse, Rosen-Morse, LJ at k = 1, and the harmonic oscillator.
/// Throws UnboundError above the last bound level and NotAvailableError for
/// kinds without a closed form.
double exact_energy(const PotentialSpec& spec, int n);

struct DissociationEnergy {
    bool unbounded = false;
    double value = 0.0; // meaningful when !unbounded
};

/// Supremum of bound energies: 0 for Poschl-Teller/Morse/LJ, the x -> +inf
/// limit for Rosen-Morse, unbounded for confining kinds.
DissociationEnergy dissociation_energy(const PotentialSpec& spec);

/// Largest n for which exact_energy is defined: nullopt when every n is
/// bound, -1 when the well holds no level at all.
std::optional<int> highest_closed_form_level(const PotentialSpec& spec);

} // namespace bsq
