#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "io/commands.hpp"
#include "io/config.hpp"
#include "io/csv.hpp"

using namespace ipm1d;
using namespace ipm1d::io;
namespace fs = std::filesystem;

// Regenerate with: ipm1d simulate --config tests/golden/short_run.json, then
// copy diagnostics.csv over tests/golden/short_run.csv.
TEST_CASE("short run matches the stored diagnostics") {
  const fs::path dir(IPM1D_GOLDEN_DIR);
  auto cfg = load_config((dir / "short_run.json").string());
  cfg.output_dir = (fs::temp_directory_path() / "ipm1d_golden_check").string();
  REQUIRE(simulate_cmd(cfg, [](const std::string&) {}) == 0);

  const auto got = read_csv((fs::path(cfg.output_dir) / "diagnostics.csv").string());
  const auto want = read_csv((dir / "short_run.csv").string());
  fs::remove_all(cfg.output_dir);
  REQUIRE(got.size() == want.size());

  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(y)); };
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& g = got[i];
    const auto& w = want[i];
    CAPTURE(i);
    CHECK(close(g.t, w.t));
    CHECK(close(g.linf, w.linf));
    CHECK(close(g.l2, w.l2));
    CHECK(close(g.hs, w.hs));
    CHECK(close(g.mean, w.mean));
    CHECK(close(g.slope_max, w.slope_max));
    // The profile stays even, so the maximum slope is attained at +-x and
    // which one wins is decided by roundoff.
    CHECK(close(std::abs(g.slope_argmax), std::abs(w.slope_argmax)));
    CHECK(close(g.bkm, w.bkm));
    CHECK(close(g.j_value, w.j_value));
    CHECK(close(g.tail_fraction, w.tail_fraction));
  }
}
