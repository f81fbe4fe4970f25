#pragma once
// Field snapshots as structured text.
//
//   # ipm1d-snapshot v1
//   n <n>
//   t <t>
//   bkm <bkm>
//   values
//   <j> <x_j> <rho(x_j)>          n lines
//   spectrum
//   <k> <re c_k> <im c_k>         n lines, k ascending
//
// Numbers use the shortest representation that round-trips, so reloading
// reproduces the values bit for bit. The spectrum is informational; a
// reload recomputes it from the values.

#include <iosfwd>
#include <string>
#include <string_view>

#include "core/solver.hpp"

namespace ipm1d::io {

inline constexpr const char* kSnapshotHeader = "# ipm1d-snapshot v1";

void write_snapshot(std::ostream& out, const SimState& state);
void write_snapshot(const std::string& path, const SimState& state);

/// Throws IoError on a malformed or unsupported document.
SimState read_snapshot(std::istream& in);
SimState read_snapshot(const std::string& path);

/// Shortest round-trip text for a double ("nan", "inf", "-inf" for the rest).
std::string format_double(double v);
/// Inverse of format_double. Throws IoError.
double parse_double(std::string_view text);

}  // namespace ipm1d::io
