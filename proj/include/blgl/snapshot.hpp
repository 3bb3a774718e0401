#pragma once

#include <string>
#include <utility>

#include "blgl/spectral_field.hpp"

namespace blgl {

inline constexpr std::uint32_t kSnapshotVersion = 1;

/// Binary container: magic "BLGL", version u32, grid descriptor
/// (K i64, J i64, Ly f64, stretch f64), time f64, then (re, im) f64 pairs in
/// xi-major, j-minor order. All fields little-endian. Round-trips bit-exactly.
void write_snapshot(const std::string& path, const SpectralField& f, double t);

std::pair<SpectralField, double> read_snapshot(const std::string& path);

}  // namespace blgl
