#pragma once

#include <cmath>
#include <complex>

#include "coldamp/params.hpp"

namespace testing {

inline double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
inline double rel(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::abs(want);
}

inline coldamp::ReferenceInstrument reference() { return coldamp::microscope_reference(); }

} // namespace testing
