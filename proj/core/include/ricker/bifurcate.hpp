#pragma once

// Initial-condition sweeps of r_{n+1} = r_{n-1} exp(d - r_{n-1} - r_n) with r_{-1}
// held fixed and r_0 as the bifurcation parameter.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ricker {

struct ScanSpec {
  double d = 4.5;
  double r_m1 = 2.25;
  double r0_lo = 2.5;
  double r0_hi = 6.5;
  std::size_t grid_n = 400;
  std::size_t transient = 2000;
  std::size_t keep = 300;
  std::size_t max_period = 64;
  double tol = 1e-6;
  unsigned threads = 0;  ///< 0: hardware concurrency, capped by RICKER_THREADS

  /// Throws DomainError when the scan settings are unusable.
  void validate() const;
  /// r0 at grid index i, evenly spaced with both ends included.
  [[nodiscard]] double r0_at(std::size_t i) const;
};

struct ScanRow {
  double r0 = 0.0;
  double t0 = 0.0;
  std::vector<double> points;          ///< the last `keep` iterates after the transient
  std::optional<std::size_t> period;   ///< empty: aperiodic (or overflowed)
  bool overflow = false;
  bool on_curve = false;
};

/// Smallest q <= max_period with |points[i+q] - points[i]| < tol for every i in the
/// window; empty ("aperiodic") when none qualifies or the window is shorter than 2q.
[[nodiscard]] std::optional<std::size_t> classify_attractor(std::span<const double> points,
                                                            double tol,
                                                            std::size_t max_period = 64);

/// One row per grid value, ordered by r0. Rows are computed in parallel and
/// gathered in input order, so the result does not depend on the thread count.
[[nodiscard]] std::vector<ScanRow> run_scan(const ScanSpec& spec);

/// Single row, as run_scan computes it.
[[nodiscard]] ScanRow scan_row(const ScanSpec& spec, double r0);

/// Header `r0,t0,period,point_index,value`, one line per kept point. The period column
/// holds an integer or "aperiodic"; an overflowed row is one line with period -1 and
/// value nan. Written atomically; throws IoError.
void emit_csv(std::span<const ScanRow> rows, const std::filesystem::path& path);
void write_csv(std::span<const ScanRow> rows, std::ostream& out);

struct LiftCheck {
  std::size_t sampled = 0;
  std::size_t compared = 0;  ///< rows where the 2q rule applies
  std::size_t agreed = 0;
  std::vector<std::string> mismatches;
  [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

/// For up to `samples` evenly spaced rows, detects the cycle of f_{t0} from r_{-1}
/// and checks that a row off the invariant curve classifies with period 2q.
[[nodiscard]] LiftCheck check_lift_consistency(std::span<const ScanRow> rows, const ScanSpec& spec,
                                               std::size_t samples = 20);

/// Worker count for the scan: `requested` (or hardware concurrency), capped by RICKER_THREADS.
[[nodiscard]] unsigned scan_threads(unsigned requested);

}  // namespace ricker
