#include "io/csv.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "core/error.hpp"
#include "io/snapshot.hpp"

namespace ipm1d::io {

namespace {

constexpr std::size_t kColumns = 10;

std::array<double, kColumns> flatten(const DiagnosticsRecord& r) {
  return {r.t, r.linf, r.l2, r.hs, r.mean, r.slope_max, r.slope_argmax, r.bkm, r.j_value, r.tail_fraction};
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto cells = flatten(r);
    for (std::size_t i = 0; i < kColumns; ++i) out << (i ? "," : "") << format_double(cells[i]);
    out << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_csv(out, rows);
  if (!out) throw IoError("failed writing " + path);
}

std::vector<DiagnosticsRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("diagnostics CSV: unexpected header");
  std::vector<DiagnosticsRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, kColumns> c{};
    std::size_t start = 0;
    for (std::size_t i = 0; i < kColumns; ++i) {
      const std::size_t end = line.find(',', start);
      const bool last = i + 1 == kColumns;
      if (last != (end == std::string::npos)) throw IoError("diagnostics CSV: wrong column count");
      c[i] = parse_double(std::string_view(line).substr(start, last ? std::string::npos : end - start));
      start = end + 1;
    }
    rows.push_back({c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8], c[9]});
  }
  return rows;
}

std::vector<DiagnosticsRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_csv(in);
}

}  // namespace ipm1d::io
