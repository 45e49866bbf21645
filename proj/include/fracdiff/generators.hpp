#pragma once

// Seeded data families for experiments and tests.

#include <cstdint>
#include <string>

#include "fracdiff/fields.hpp"

namespace fracdiff {

/// Boundary data families.
///   noise:  independent N(0, 1) / sqrt(T) per node after t = 0, so that
///           E |g_side|^2_{L2(0,T)} is about 1.
///   step:   random amplitude times the indicator of t >= T/2.
///   smooth: sum_{i=1..3} c_i sin(i pi t / (2T)) with c_i ~ N(0, 1) / i.
///   zero:   g = 0.
enum class GFamily { Noise, Step, Smooth, Zero };

const char* to_string(GFamily f);
GFamily g_family_from_string(const std::string& s);

BoundaryData make_boundary_data(GFamily family, const TimeGrid& grid, std::uint64_t seed);

/// Random smooth source sum_{j=1..4} sum_{q=1..3} c_jq sin(j pi x / L) tau_q(t)
/// with c_jq ~ N(0, 1) / j. With vanish_at_zero, tau_q = sin(q pi t / (2T));
/// otherwise tau_q = cos((q - 1) pi t / T).
SpaceTimeField random_smooth_field(const SpatialGrid& sgrid, const TimeGrid& tgrid, std::uint64_t seed,
                                   bool vanish_at_zero = true);

}  // namespace fracdiff
