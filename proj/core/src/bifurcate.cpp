#include "ricker/bifurcate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "ricker/csv.hpp"
#include "ricker/errors.hpp"
#include "ricker/semiconj.hpp"
#include "ricker/simulate.hpp"

namespace ricker {

void ScanSpec::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("scan needs d > 0");
  if (!(r_m1 > 0.0)) throw DomainError("scan needs r_m1 > 0");
  if (!(r0_lo > 0.0)) throw DomainError("scan needs r0_lo > 0");
  if (!(r0_lo < r0_hi)) throw DomainError("scan needs r0_lo < r0_hi");
  if (grid_n < 2) throw DomainError("scan needs grid >= 2");
  if (keep < 1) throw DomainError("scan needs keep >= 1");
  if (max_period < 1) throw DomainError("scan needs max_period >= 1");
  if (!(tol > 0.0)) throw DomainError("scan needs tol > 0");
}

double ScanSpec::r0_at(std::size_t i) const {
  if (i + 1 == grid_n) return r0_hi;
  return r0_lo + (r0_hi - r0_lo) * static_cast<double>(i) / static_cast<double>(grid_n - 1);
}

std::optional<std::size_t> classify_attractor(std::span<const double> points, double tol,
                                              std::size_t max_period) {
  for (std::size_t q = 1; q <= max_period && 2 * q <= points.size(); ++q) {
    bool ok = true;
    for (std::size_t i = 0; i + q < points.size() && ok; ++i) {
      ok = std::abs(points[i + q] - points[i]) < tol;
    }
    if (ok) return q;
  }
  return std::nullopt;
}

ScanRow scan_row(const ScanSpec& spec, double r0) {
  ScanRow row;
  row.r0 = r0;
  const FactorState fs = FactorState::from_seeds(spec.d, spec.r_m1, r0);
  row.t0 = fs.t0;
  row.on_curve = fs.on_invariant_curve();

  double prev = spec.r_m1;
  double cur = r0;
  const std::size_t total = spec.transient + spec.keep;
  row.points.reserve(spec.keep);
  try {
    for (std::size_t n = 0; n < total; ++n) {
      const double next =
          prev * checked_exp(spec.d - prev - cur, static_cast<std::int64_t>(n) + 1);
      prev = cur;
      cur = next;
      if (n >= spec.transient) row.points.push_back(cur);
    }
  } catch (const OverflowError&) {
    row.overflow = true;
    row.points.clear();
    return row;
  }
  row.period = classify_attractor(row.points, spec.tol, spec.max_period);
  return row;
}

unsigned scan_threads(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RICKER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<ScanRow> run_scan(const ScanSpec& spec) {
  spec.validate();
  std::vector<ScanRow> rows(spec.grid_n);
  const unsigned workers =
      std::min<unsigned>(scan_threads(spec.threads), static_cast<unsigned>(spec.grid_n));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < spec.grid_n; i = next++) rows[i] = scan_row(spec, spec.r0_at(i));
  };
  if (workers <= 1) {
    work();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();  // joins
  return rows;
}

void write_csv(std::span<const ScanRow> rows, std::ostream& out) {
  out << "r0,t0,period,point_index,value\n";
  for (const ScanRow& row : rows) {
    const std::string lead = format_real(row.r0) + ',' + format_real(row.t0) + ',';
    if (row.overflow) {
      out << lead << "-1,0,nan\n";
      continue;
    }
    const std::string period = row.period ? std::to_string(*row.period) : "aperiodic";
    for (std::size_t k = 0; k < row.points.size(); ++k) {
      out << lead << period << ',' << k << ',' << format_real(row.points[k]) << '\n';
    }
  }
}

void emit_csv(std::span<const ScanRow> rows, const std::filesystem::path& path) {
  write_file_atomic(path, [&](std::ostream& out) { write_csv(rows, out); });
}

LiftCheck check_lift_consistency(std::span<const ScanRow> rows, const ScanSpec& spec,
                                 std::size_t samples) {
  LiftCheck lc;
  if (rows.empty() || samples == 0) return lc;
  const std::size_t n = std::min(samples, rows.size());
  CycleOptions opt;
  opt.transient = spec.transient;
  opt.max_period = std::max<std::size_t>(1, spec.max_period / 2);
  opt.tol = 1e-8;

  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t idx = n == 1 ? 0 : s * (rows.size() - 1) / (n - 1);
    const ScanRow& row = rows[idx];
    ++lc.sampled;
    if (row.overflow || row.on_curve) continue;
    CycleResult cr;
    try {
      cr = detect_cycle(MapConfig{spec.d, row.t0}, spec.r_m1, opt);
    } catch (const OverflowError&) {
      continue;
    }
    if (!cr.converged) {
      if (row.period) {
        lc.mismatches.push_back("r0=" + format_real(row.r0) + ": row period " +
                                std::to_string(*row.period) + " but no f0 cycle found");
      }
      continue;
    }
    const LiftedCycle lifted = lift_cycle(cr, spec.d, row.t0);
    if (lifted.minimal_period != 2 * cr.period) continue;  // coincident points: rule does not apply
    ++lc.compared;
    if (row.period && *row.period == 2 * cr.period) {
      ++lc.agreed;
    } else {
      lc.mismatches.push_back("r0=" + format_real(row.r0) + ": f0 period " +
                              std::to_string(cr.period) + ", row period " +
                              (row.period ? std::to_string(*row.period) : "aperiodic"));
    }
  }
  return lc;
}

}  // namespace ricker
