#pragma once
// Diagnostics CSV. Columns, in this order:
//   t, linf, l2, hs, mean, slope_max, slope_argmax, bkm, j_value, tail_fraction
// One row per output time; numbers in shortest round-trip form, "nan" for
// a J value that is undefined at that time.

#include <iosfwd>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"

namespace ipm1d::io {

inline constexpr const char* kCsvHeader =
    "t,linf,l2,hs,mean,slope_max,slope_argmax,bkm,j_value,tail_fraction";

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& rows);
void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& rows);

/// Throws IoError on a wrong header or malformed row.
std::vector<DiagnosticsRecord> read_csv(std::istream& in);
std::vector<DiagnosticsRecord> read_csv(const std::string& path);

}  // namespace ipm1d::io
