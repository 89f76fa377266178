#include "telegraph/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "telegraph/errors.hpp"

namespace telegraph {

double first_passage_time(Stream& rng, const RateParams& p, double height, bool start_up) {
  const double lambda = p.lambda();
  const double mu = p.mu();
  double t = 0.0;
  double h = height;
  if (start_up) {
    const double up = rng.exponential(lambda);
    t += up;
    h += up;
  }
  for (;;) {
    const double down = rng.exponential(mu);
    if (down >= h) return t + h;
    t += down;
    h -= down;
    const double up = rng.exponential(lambda);
    t += up;
    h += up;
  }
}

double sample_c0(Stream& rng, const RateParams& p) { return first_passage_time(rng, p, 0.0, true); }

double sample_cx(Stream& rng, const RateParams& p) { return first_passage_time(rng, p, p.x(), true); }

double sample_ax(Stream& rng, const RateParams& p, const MDistribution& m) {
  const std::int64_t visits = m.sample(rng);
  double total = sample_cx(rng, p);
  for (std::int64_t i = 1; i < visits; ++i) total += sample_c0(rng, p);
  return total;
}

const char* to_string(Target t) {
  switch (t) {
    case Target::c0:
      return "c0";
    case Target::cx:
      return "cx";
    case Target::ax:
      return "ax";
  }
  return "?";
}

Target parse_target(const std::string& name) {
  if (name == "c0") return Target::c0;
  if (name == "cx") return Target::cx;
  if (name == "ax") return Target::ax;
  throw ParameterError("unknown target '" + name + "' (expected c0, cx or ax)");
}

double SummaryStats::std_error() const {
  if (count < 2) return std::numeric_limits<double>::infinity();
  return std::sqrt(variance / static_cast<double>(count));
}

void RunningStats::push(double v) {
  ++n_;
  const double delta = v - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (v - mean_);
  min_ = std::min(min_, v);
  max_ = std::max(max_, v);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const auto na = static_cast<double>(n_);
  const auto nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

SummaryStats RunningStats::summary() const {
  SummaryStats s;
  s.count = n_;
  s.mean = mean_;
  s.variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  s.min = min_;
  s.max = max_;
  return s;
}

SummaryStats summarize(const std::vector<double>& values) {
  RunningStats rs;
  for (double v : values) rs.push(v);
  return rs.summary();
}

SampleBatch generate_batch(std::size_t n, std::uint64_t seed, const Sampler& draw,
                           unsigned workers) {
  if (n == 0) throw ParameterError("batch size n must be at least 1");
  SampleBatch batch;
  batch.n = n;
  batch.seed = seed;
  batch.chunk_size = kChunkSize;
  batch.samples.resize(n);

  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<RunningStats> chunk_stats(chunks);

  auto run_chunk = [&](std::size_t k) {
    Stream rng(seed, k);
    const std::size_t begin = k * kChunkSize;
    const std::size_t end = std::min(n, begin + kChunkSize);
    RunningStats& rs = chunk_stats[k];
    for (std::size_t i = begin; i < end; ++i) {
      const double v = draw(rng);
      batch.samples[i] = v;
      rs.push(v);
    }
  };

  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
  if (w == 1) {
    for (std::size_t k = 0; k < chunks; ++k) run_chunk(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < chunks; k = next++) run_chunk(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  RunningStats total;
  for (const auto& rs : chunk_stats) total.merge(rs);
  batch.summary = total.summary();
  return batch;
}

SampleBatch simulate_batch(std::size_t n, std::uint64_t seed, const RateParams& p,
                           const MDistribution& m, Target target, unsigned workers) {
  Sampler draw;
  switch (target) {
    case Target::c0:
      draw = [&p](Stream& rng) { return sample_c0(rng, p); };
      break;
    case Target::cx:
      draw = [&p](Stream& rng) { return sample_cx(rng, p); };
      break;
    case Target::ax:
      draw = [&p, &m](Stream& rng) { return sample_ax(rng, p, m); };
      break;
  }
  return generate_batch(n, seed, draw, workers);
}

}  // namespace telegraph
