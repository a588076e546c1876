#pragma once

namespace bsq {

/// Gamma function via a Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula for x < 0.5. Relative accuracy is better than 1e-13
/// over the argument ranges the library needs (|x| <= 30, x not a pole).
double gamma_fn(double x);

/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

} // namespace bsq
