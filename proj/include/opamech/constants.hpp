#pragma once

namespace opamech::constants {

// Fundamental constants pinned to exact SI (2019 redefinition) values so that
// results are bit-reproducible across platforms and toolchains.
inline constexpr double speed_of_light = 299792458.0;  // m / s
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J / K

} // namespace opamech::constants
