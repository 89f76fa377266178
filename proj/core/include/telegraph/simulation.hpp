#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "telegraph/m_distribution.hpp"
#include "telegraph/params.hpp"
#include "telegraph/random.hpp"

namespace telegraph {

/// Samples per substream; every chunk k of a batch draws from Stream(seed, k).
inline constexpr std::size_t kChunkSize = 1024;

/// Time for the particle to reach the origin from `height`, starting with
/// velocity `start_up ? +1 : -1`. Phases are exact exponential durations:
/// rate lambda while moving up, rate mu while moving down.
double first_passage_time(Stream& rng, const RateParams& p, double height, bool start_up);

/// One excursion away from the origin and back (C_0).
double sample_c0(Stream& rng, const RateParams& p);
/// First passage to the origin from p.x() (C_x).
double sample_cx(Stream& rng, const RateParams& p);
/// Absorption time A_x = C_x + sum of M-1 independent excursions.
double sample_ax(Stream& rng, const RateParams& p, const MDistribution& m);

enum class Target { c0, cx, ax };

const char* to_string(Target t);
Target parse_target(const std::string& name);

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased; 0 when count < 2
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  double std_error() const;
};

/// Single-pass mean/variance accumulator (Welford) with an exact pairwise merge.
class RunningStats {
 public:
  void push(double v);
  void merge(const RunningStats& other);
  SummaryStats summary() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

SummaryStats summarize(const std::vector<double>& values);

struct SampleBatch {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t chunk_size = kChunkSize;
  std::vector<double> samples;
  SummaryStats summary;
};

using Sampler = std::function<double(Stream&)>;

/// Draws n values with `draw`, chunk k from Stream(seed, k). Output is
/// identical for every `workers` value; summaries are merged in chunk order.
SampleBatch generate_batch(std::size_t n, std::uint64_t seed, const Sampler& draw,
                           unsigned workers = 1);

SampleBatch simulate_batch(std::size_t n, std::uint64_t seed, const RateParams& p,
                           const MDistribution& m, Target target, unsigned workers = 1);

}  // namespace telegraph
