#pragma once

#include <random>
#include <vector>

#include "coldamp/params.hpp"

namespace coldamp {

/// Instrument drawn log-uniformly within +-`decades` of `center` for every
/// positive parameter (|Z_f| and |Z_t| are drawn as magnitudes at `omega`).
/// Zero-valued parameters of `center` stay zero.
InstrumentParams random_instrument(const InstrumentParams& center, double omega, std::mt19937_64& rng,
                                   double decades = 2.0);

/// `count` log-spaced frequencies spanning `decades` centered on omega.
std::vector<double> frequency_span(double omega, std::size_t count, double decades);

} // namespace coldamp
