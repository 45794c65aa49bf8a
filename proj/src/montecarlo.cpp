#include "slepian/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace slepian::montecarlo {

namespace detail {

const ZigTables& zig_tables() {
  static const ZigTables tables = [] {
    ZigTables z{};
    constexpr double r = 3.442619855899;
    constexpr double v = 9.91256303526217e-3;
    constexpr double m = 9007199254740992.0;  // 2^53
    double dn = r;
    double tn = r;
    double q = v / std::exp(-0.5 * r * r);
    z.k[0] = static_cast<std::uint64_t>((r / q) * m);
    z.k[1] = 0;
    z.w[0] = q / m;
    z.w[127] = r / m;
    z.f[0] = 1.0;
    z.f[127] = std::exp(-0.5 * r * r);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(v / dn + std::exp(-0.5 * dn * dn)));
      z.k[i + 1] = static_cast<std::uint64_t>((dn / tn) * m);
      tn = dn;
      z.f[i] = std::exp(-0.5 * dn * dn);
      z.w[i] = dn / m;
    }
    z.r = r;
    z.inv_r = 1.0 / r;
    return z;
  }();
  return tables;
}

}  // namespace detail

void validate_spec(const McSpec& spec) {
  if (spec.paths < 1) throw DomainError("McSpec: paths must be at least 1");
  if (!(spec.grid_step > 0.0 && spec.grid_step <= 1e-2))
    throw DomainError("McSpec: grid_step must lie in (0, 1e-2]");
  double n = std::round(1.0 / spec.grid_step);
  if (std::abs(n * spec.grid_step - 1.0) > 1e-12)
    throw DomainError("McSpec: grid_step must divide 1");
  if (spec.workers < 0) throw DomainError("McSpec: workers must be nonnegative");
}

int resolve_workers(const McSpec& spec) {
  int w = spec.workers;
  if (w <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    w = hc > 0 ? static_cast<int>(hc) : 1;
  }
  if (const char* cap_env = std::getenv("SLEPIAN_MAX_THREADS")) {
    int cap = std::atoi(cap_env);
    if (cap >= 1) w = std::min(w, cap);
  }
  return std::max(1, w);
}

namespace {

constexpr long long kChunkPaths = 4096;

// Offset -> step index, requiring the offset to sit on the grid.
long long grid_index(double offset, double h, const char* what) {
  long long idx = std::llround(offset / h);
  if (idx < 0 || std::abs(static_cast<double>(idx) * h - offset) > 1e-9)
    throw DomainError(std::string(what) + " must lie on the step grid");
  return idx;
}

// Runs fn(path_index) over [0, paths) on the resolved worker count.
// Workers pull fixed-size chunks off a shared counter; every write the
// callback makes must go to per-path slots so the outcome is identical
// for any worker count.
template <class Fn>
void run_over_paths(const McSpec& spec, long long paths, const Fn& fn) {
  int workers = resolve_workers(spec);
  long long chunks = (paths + kChunkPaths - 1) / kChunkPaths;
  if (workers == 1 || chunks == 1) {
    for (long long p = 0; p < paths; ++p) fn(p);
    return;
  }
  std::atomic<long long> next_chunk{0};
  auto worker = [&] {
    for (;;) {
      long long c = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      long long lo = c * kChunkPaths;
      long long hi = std::min(lo + kChunkPaths, paths);
      for (long long p = lo; p < hi; ++p) fn(p);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace

SimResult simulate_slepian(const McSpec& spec, const SimOptions& options) {
  validate_spec(spec);
  const double h = spec.grid_step;
  const long long lag = std::llround(1.0 / h);

  std::vector<long long> horizon_idx;
  horizon_idx.reserve(options.horizons.size());
  for (double s : options.horizons) {
    if (!(s >= 0.0 && s <= 1.0))
      throw DomainError("simulate_slepian: horizons must lie in [0,1]");
    horizon_idx.push_back(grid_index(s, h, "horizon"));
  }
  if (!std::is_sorted(horizon_idx.begin(), horizon_idx.end()))
    throw DomainError("simulate_slepian: horizons must be ascending");

  std::vector<long long> probe_idx;
  probe_idx.reserve(options.value_probes.size());
  for (double u : options.value_probes) {
    if (!(u >= 0.0 && u <= 1.0))
      throw DomainError("simulate_slepian: probes must lie in [0,1]");
    probe_idx.push_back(grid_index(u, h, "probe"));
  }
  if (!std::is_sorted(probe_idx.begin(), probe_idx.end()))
    throw DomainError("simulate_slepian: probes must be ascending");

  long long extra = 0;
  if (!horizon_idx.empty()) extra = std::max(extra, horizon_idx.back());
  if (!probe_idx.empty()) extra = std::max(extra, probe_idx.back());

  double work = static_cast<double>(spec.paths) * static_cast<double>(lag + extra);
  if (work > max_path_steps_budget)
    throw ResourceError("simulate_slepian: requested work exceeds the step budget");

  const std::size_t n_paths = static_cast<std::size_t>(spec.paths);
  SimResult out;
  out.horizons = options.horizons;
  out.probe_times = options.value_probes;
  out.running_max.assign(horizon_idx.size(), std::vector<double>(n_paths));
  if (options.record_coarse_maxima)
    out.running_max_coarse.assign(horizon_idx.size(), std::vector<double>(n_paths));
  out.probe_values.assign(probe_idx.size(), std::vector<double>(n_paths));
  if (options.record_half_maxima) {
    out.half1_max.assign(n_paths, 0.0);
    out.half2_max.assign(n_paths, 0.0);
  }

  const double sqrt_h = std::sqrt(h);
  const long long half = lag / 2;
  const std::size_t n_horizons = horizon_idx.size();
  const std::size_t n_probes = probe_idx.size();
  const bool want_half = options.record_half_maxima;
  const bool want_coarse = options.record_coarse_maxima;
  const double neg_inf = -std::numeric_limits<double>::infinity();

  auto simulate_one = [&](long long path, std::vector<double>& ring) {
    PhiloxStream gen(spec.master_seed, static_cast<std::uint32_t>(path),
                     stream_class_paths);
    const std::size_t p = static_cast<std::size_t>(path);

    // Warm-up: drive the Brownian motion across one full lag so the
    // process starts from its stationary state.
    double B = 0.0;
    double b1 = 0.0;
    double b2 = neg_inf;
    for (long long k = 1; k <= lag; ++k) {
      double dB = gen.next_normal() * sqrt_h;
      ring[static_cast<std::size_t>(k - 1)] = dB;
      B += dB;
      if (want_half) {
        if (k <= half) {
          if (B > b1) b1 = B;
          if (k == half && B > b2) b2 = B;
        } else if (B > b2) {
          b2 = B;
        }
      }
    }
    if (want_half) {
      if (half == 0) b2 = std::max(b2, 0.0);
      out.half1_max[p] = b1;
      out.half2_max[p] = b2;
    }

    double S = B;
    double max_fine = S;
    double max_coarse = S;
    std::size_t h_next = 0;
    std::size_t p_next = 0;
    while (h_next < n_horizons && horizon_idx[h_next] == 0) {
      out.running_max[h_next][p] = max_fine;
      if (want_coarse) out.running_max_coarse[h_next][p] = max_coarse;
      ++h_next;
    }
    while (p_next < n_probes && probe_idx[p_next] == 0) {
      out.probe_values[p_next][p] = S;
      ++p_next;
    }

    for (long long j = 1; j <= extra; ++j) {
      double dB = gen.next_normal() * sqrt_h;
      S += dB - ring[static_cast<std::size_t>(j - 1)];
      if (S > max_fine) max_fine = S;
      if (want_coarse && (j & 3) == 0 && S > max_coarse) max_coarse = S;
      if (h_next < n_horizons && j == horizon_idx[h_next]) {
        do {
          out.running_max[h_next][p] = max_fine;
          if (want_coarse) out.running_max_coarse[h_next][p] = max_coarse;
          ++h_next;
        } while (h_next < n_horizons && horizon_idx[h_next] == j);
      }
      if (p_next < n_probes && j == probe_idx[p_next]) {
        do {
          out.probe_values[p_next][p] = S;
          ++p_next;
        } while (p_next < n_probes && probe_idx[p_next] == j);
      }
    }

    for (std::size_t i = 1; i < n_horizons; ++i) {
      if (out.running_max[i][p] < out.running_max[i - 1][p])
        throw std::logic_error("simulate_slepian: running maxima not nested");
    }
  };

  // Each worker owns one ring buffer of increments, recycled across its
  // paths; thread_local would pin buffers past the call, so allocate per
  // worker invocation instead.
  if (resolve_workers(spec) == 1) {
    std::vector<double> ring(static_cast<std::size_t>(lag));
    for (long long p = 0; p < spec.paths; ++p) simulate_one(p, ring);
  } else {
    std::atomic<long long> next_chunk{0};
    long long chunks = (spec.paths + kChunkPaths - 1) / kChunkPaths;
    auto worker = [&] {
      std::vector<double> ring(static_cast<std::size_t>(lag));
      for (;;) {
        long long c = next_chunk.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunks) return;
        long long lo = c * kChunkPaths;
        long long hi = std::min(lo + kChunkPaths, spec.paths);
        for (long long p = lo; p < hi; ++p) simulate_one(p, ring);
      }
    };
    int workers = resolve_workers(spec);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  return out;
}

SimResult simulate_running_max(const McSpec& spec, const std::vector<double>& s_list,
                               double t_max) {
  SimOptions options;
  options.horizons = s_list;
  for (double s : options.horizons) {
    if (s > t_max)
      throw DomainError("simulate_running_max: offsets must not exceed t_max");
  }
  options.horizons.push_back(t_max);
  std::sort(options.horizons.begin(), options.horizons.end());
  options.horizons.erase(
      std::unique(options.horizons.begin(), options.horizons.end()),
      options.horizons.end());
  return simulate_slepian(spec, options);
}

std::vector<PathSample> path_samples(const SimResult& result, std::size_t s_index,
                                     std::size_t t_index) {
  if (s_index >= result.running_max.size() || t_index >= result.running_max.size())
    throw DomainError("path_samples: horizon index out of range");
  const std::vector<double>& ms = result.running_max[s_index];
  const std::vector<double>& mt = result.running_max[t_index];
  std::vector<PathSample> out(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) out[i] = {ms[i], mt[i]};
  return out;
}

McEstimate simulate_bridge_noncross(double a, double b, double sbar, double y,
                                    const McSpec& spec) {
  validate_spec(spec);
  if (!(sbar > 0.0))
    throw DomainError("simulate_bridge_noncross: sbar must be positive");
  if (y > a * sbar + b)
    throw DomainError("simulate_bridge_noncross: endpoint lies above the boundary");
  if (b <= 0.0) return {0.0, 0.0, spec.paths};

  long long n = std::max<long long>(2, std::llround(sbar / spec.grid_step));
  double h = sbar / static_cast<double>(n);
  double work = static_cast<double>(spec.paths) * static_cast<double>(n);
  if (work > max_path_steps_budget)
    throw ResourceError("simulate_bridge_noncross: requested work exceeds the step budget");

  long long chunks = (spec.paths + kChunkPaths - 1) / kChunkPaths;
  std::vector<long long> chunk_hits(static_cast<std::size_t>(chunks), 0);

  run_over_paths(spec, spec.paths, [&](long long path) {
    PhiloxStream gen(spec.master_seed, static_cast<std::uint32_t>(path),
                     stream_class_bridges);
    double X = 0.0;
    bool ok = true;
    for (long long k = 1; k < n; ++k) {
      double t_left = sbar - static_cast<double>(k - 1) * h;
      double mean = X + (y - X) * (h / t_left);
      double var = h * (t_left - h) / t_left;
      X = mean + std::sqrt(var) * gen.next_normal();
      if (X > a * (static_cast<double>(k) * h) + b) {
        ok = false;
        break;
      }
    }
    if (ok) ++chunk_hits[static_cast<std::size_t>(path / kChunkPaths)];
  });

  long long hits = 0;
  for (long long c : chunk_hits) hits += c;
  double p = static_cast<double>(hits) / static_cast<double>(spec.paths);
  double se = std::sqrt(p * (1.0 - p) / static_cast<double>(spec.paths));
  return {p, se, spec.paths};
}

McEstimate empirical_cdf(const std::vector<double>& samples, double level) {
  if (samples.empty()) throw DomainError("empirical_cdf: no samples");
  long long count = 0;
  for (double x : samples) count += (x <= level) ? 1 : 0;
  double n = static_cast<double>(samples.size());
  double p = static_cast<double>(count) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), static_cast<long long>(samples.size())};
}

McEstimate empirical_joint_cdf(const std::vector<PathSample>& samples, double m,
                               double M) {
  if (samples.empty()) throw DomainError("empirical_joint_cdf: no samples");
  long long count = 0;
  for (const PathSample& s : samples) count += (s.m_s <= m && s.M_t <= M) ? 1 : 0;
  double n = static_cast<double>(samples.size());
  double p = static_cast<double>(count) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), static_cast<long long>(samples.size())};
}

namespace {

double pow_int(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

}  // namespace

McEstimate sample_moment(const std::vector<double>& samples, int k) {
  if (samples.empty()) throw DomainError("sample_moment: no samples");
  if (k < 1) throw DomainError("sample_moment: order must be at least 1");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : samples) {
    double xk = pow_int(x, k);
    sum += xk;
    sum_sq += xk * xk;
  }
  double n = static_cast<double>(samples.size());
  double mean = sum / n;
  double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), static_cast<long long>(samples.size())};
}

McEstimate extrapolated_moment(const std::vector<double>& fine,
                               const std::vector<double>& coarse, int k) {
  if (fine.empty() || fine.size() != coarse.size())
    throw DomainError("extrapolated_moment: sample vectors must match and be nonempty");
  if (k < 1) throw DomainError("extrapolated_moment: order must be at least 1");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    double xi = 2.0 * pow_int(fine[i], k) - pow_int(coarse[i], k);
    sum += xi;
    sum_sq += xi * xi;
  }
  double n = static_cast<double>(fine.size());
  double mean = sum / n;
  double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), static_cast<long long>(fine.size())};
}

McEstimate covariance_estimate(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size())
    throw DomainError("covariance_estimate: sample vectors must match and be nonempty");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  double n = static_cast<double>(xs.size());
  mx /= n;
  my /= n;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double prod = (xs[i] - mx) * (ys[i] - my);
    sum += prod;
    sum_sq += prod * prod;
  }
  double cov = sum / n;
  double var = std::max(0.0, sum_sq / n - cov * cov);
  return {cov, std::sqrt(var / n), static_cast<long long>(xs.size())};
}

}  // namespace slepian::montecarlo
