#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "telegraph/simulation.hpp"

namespace telegraph {

/// Contents of the `.meta` sidecar written next to a sample CSV.
struct SampleMeta {
  double lambda = 0.0;
  double mu = 0.0;
  double x = 0.0;
  std::string m_kind;
  std::string m_params;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t chunk_size = kChunkSize;
  std::string target;

  friend bool operator==(const SampleMeta&, const SampleMeta&) = default;
};

/// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double v);

/// Sidecar path: same stem as the CSV, extension `.meta`.
std::filesystem::path meta_path_for(const std::filesystem::path& csv_path);

/// `index,value` header, one draw per row.
void write_sample_csv(std::ostream& os, const std::vector<double>& samples);
void write_meta(std::ostream& os, const SampleMeta& meta);

std::vector<double> read_sample_csv(std::istream& is);
SampleMeta read_meta(std::istream& is);

/// Writes the CSV and its sidecar. Throws std::runtime_error on I/O failure.
void save_samples(const std::filesystem::path& csv_path, const SampleBatch& batch,
                  const SampleMeta& meta);

std::vector<double> load_sample_csv(const std::filesystem::path& csv_path);
SampleMeta load_meta(const std::filesystem::path& meta_path);

}  // namespace telegraph
