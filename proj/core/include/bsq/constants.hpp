#pragma once

#include <numbers>
#include <stdexcept>

namespace bsq {

/// Physical constants of a problem. Defaults give the natural units hbar = m = 1.
struct Constants {
    double hbar = 1.0;
    double mass = 1.0;

    Constants() = default;
    Constants(double hbar_, double mass_) : hbar(hbar_), mass(mass_) {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw std::invalid_argument("Constants: hbar and mass must be positive");
    }

    /// Planck constant h = 2*pi*hbar, the action quantum of the Bohr-Sommerfeld rule.
    double h() const noexcept { return 2.0 * std::numbers::pi * hbar; }
};

} // namespace bsq
