#pragma once

#include <string>

#include "relax/spectral_field.hpp"

namespace relax {

// Binary field snapshot, little-endian:
//   "RLXF" | u32 version | u32 d | u32 n_per_axis | f64 L | f64 time |
//   u32 representation (0 = spectral pairs, 1 = physical samples) | payload.
// Spectral payload: 2*N^d doubles (re, im per coefficient, flat index order).
// Physical payload: N^d doubles.
void save_snapshot(const std::string& path, const SpectralField& u, double time,
                   bool physical = false);

struct Snapshot {
    SpectralField field;
    double time = 0.0;
};

Snapshot load_snapshot(const std::string& path);

} // namespace relax
