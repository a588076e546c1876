#include "bsq/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bsq {

namespace {

// Lanczos coefficients for g = 7, 9-term series (double precision).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma_positive(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        sum += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

} // namespace

double gamma_fn(double x) {
    if (std::isnan(x))
        return x;
    if (x == std::floor(x) && x <= 0.0)
        throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi /
               (std::sin(std::numbers::pi * x) * lanczos_gamma_positive(1.0 - x));
    }
    return lanczos_gamma_positive(x);
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
               log_gamma(1.0 - x);
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        sum += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(sum);
}

} // namespace bsq
