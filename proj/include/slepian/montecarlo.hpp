#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "slepian/errors.hpp"

namespace slepian::montecarlo {

struct McSpec {
  long long paths = 1'000'000;
  double grid_step = 1e-4;
  std::uint64_t master_seed = 42;
  // 0 means one worker per available hardware thread. The environment
  // variable SLEPIAN_MAX_THREADS caps the resolved count either way.
  int workers = 0;
};

struct PathSample {
  double m_s;
  double M_t;
};

struct McEstimate {
  double estimate;
  double std_error;
  long long paths_used;
};

// Hard cap on paths * steps-per-path across one simulation call.
inline constexpr double max_path_steps_budget = 6e10;

inline constexpr std::uint32_t stream_class_paths = 0;
inline constexpr std::uint32_t stream_class_bridges = 1;

void validate_spec(const McSpec& spec);

// Number of worker threads a simulation will actually use.
int resolve_workers(const McSpec& spec);

namespace detail {

// Ziggurat layer tables for the standard normal, 128 layers, 53-bit
// magnitudes. k holds the integer fast-accept thresholds, w the scale from
// integer magnitude to coordinate, f the density at each layer edge.
struct ZigTables {
  std::uint64_t k[128];
  double w[128];
  double f[128];
  double r;
  double inv_r;
};

const ZigTables& zig_tables();

}  // namespace detail

// Counter-based generator: Philox-4x32 with 10 rounds. Each simulated path
// gets its own stream, keyed by the master seed and addressed by
// (block counter, stream id, stream class) in the counter words, so any
// path can be regenerated in isolation and results do not depend on how
// paths are distributed over threads.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t stream_id, std::uint32_t stream_class)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, stream_id, stream_class},
        zig_(&detail::zig_tables()) {}

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buf_ = block(ctr_, key_);
      if (++ctr_[0] == 0) ++ctr_[1];
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on the open interval (0, 1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Standard normal draw. One u64 feeds the common case: low 7 bits pick
  // the layer, bit 7 the sign, bits 11..63 the 53-bit magnitude, so the
  // accept test and the returned coordinate never share bits.
  double next_normal() {
    const detail::ZigTables& z = *zig_;
    for (;;) {
      std::uint64_t u = next_u64();
      int layer = static_cast<int>(u & 127u);
      std::uint64_t mag = u >> 11;
      double val = static_cast<double>(mag) * z.w[layer];
      bool neg = (u & 128u) != 0;
      if (mag < z.k[layer]) return neg ? -val : val;
      if (layer == 0) {
        double xt, yt;
        do {
          xt = -std::log(next_unit()) * z.inv_r;
          yt = -std::log(next_unit());
        } while (yt + yt < xt * xt);
        double out = z.r + xt;
        return neg ? -out : out;
      }
      if (z.f[layer] + next_unit() * (z.f[layer - 1] - z.f[layer]) <
          std::exp(-0.5 * val * val))
        return neg ? -val : val;
    }
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  const detail::ZigTables* zig_;
};

// What one simulation pass should record.
struct SimOptions {
  // Running-max record offsets, ascending, each on the step grid in [0,1].
  std::vector<double> horizons;
  // Offsets at which the process value itself is recorded.
  std::vector<double> value_probes;
  // Maxima of the driving Brownian motion over [0,1/2] and [1/2,1].
  bool record_half_maxima = false;
  // Additionally track running maxima on a 4x coarser subgrid (same paths),
  // for bias-cancelling moment estimates.
  bool record_coarse_maxima = false;
};

struct SimResult {
  std::vector<double> horizons;
  std::vector<std::vector<double>> running_max;         // [horizon][path]
  std::vector<std::vector<double>> running_max_coarse;  // [horizon][path]
  std::vector<double> probe_times;
  std::vector<std::vector<double>> probe_values;  // [probe][path]
  std::vector<double> half1_max;                  // [path]
  std::vector<double> half2_max;                  // [path]
};

SimResult simulate_slepian(const McSpec& spec, const SimOptions& options);

// Convenience wrapper: running maxima at each offset in s_list plus t_max.
SimResult simulate_running_max(const McSpec& spec, const std::vector<double>& s_list,
                               double t_max);

// Pairs (m_s, M_t) for two recorded horizons of a simulation result.
std::vector<PathSample> path_samples(const SimResult& result, std::size_t s_index,
                                     std::size_t t_index);

// P(bridge from 0 to y over [0, sbar] stays below a*u + b), estimated by
// Euler simulation of the conditioned process. Endpoint must satisfy
// y <= a*sbar + b; returns exactly zero when b <= 0.
McEstimate simulate_bridge_noncross(double a, double b, double sbar, double y,
                                    const McSpec& spec);

McEstimate empirical_cdf(const std::vector<double>& samples, double level);
McEstimate empirical_joint_cdf(const std::vector<PathSample>& samples, double m,
                               double M);

// Mean of x^k with its standard error.
McEstimate sample_moment(const std::vector<double>& samples, int k);

// Two-grid estimator: per path 2*fine^k - coarse^k, cancelling the
// sqrt(step) discretization bias of simulated running-max moments.
McEstimate extrapolated_moment(const std::vector<double>& fine,
                               const std::vector<double>& coarse, int k);

// Sample covariance of paired samples with a delta-method standard error.
McEstimate covariance_estimate(const std::vector<double>& xs,
                               const std::vector<double>& ys);

}  // namespace slepian::montecarlo
