#pragma once

#include <string_view>

namespace bsq {

/// Which machinery produced an energy level.
enum class Method {
    perturbative,
    numericBS,
    asymptoticFit,
    oracle,
    exactClosedForm,
};

std::string_view method_name(Method m);

/// One (n, E) pair tagged with its provenance.
struct SpectrumLevel {
    int n = 0;
    double energy = 0.0;
    Method method = Method::numericBS;
};

} // namespace bsq
