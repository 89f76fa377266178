#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "telegraph/sample_io.hpp"

using namespace telegraph;

namespace {

SampleMeta example_meta() {
  SampleMeta m;
  m.lambda = 2.0;
  m.mu = 1.0;
  m.x = 0.1;
  m.m_kind = "shifted_pig";
  m.m_params = "theta=1,xi=2";
  m.n = 3;
  m.seed = 18446744073709551615ULL;
  m.chunk_size = kChunkSize;
  m.target = "ax";
  return m;
}

}  // namespace

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(MetaPath, ReplacesExtension) {
  EXPECT_EQ(meta_path_for("out/run.csv"), std::filesystem::path("out/run.meta"));
  EXPECT_EQ(meta_path_for("plain"), std::filesystem::path("plain.meta"));
}

TEST(SampleCsv, StreamRoundTrip) {
  const std::vector<double> v = {0.1, 2.0 / 3.0, 123456.789, 1e-12};
  std::stringstream ss;
  write_sample_csv(ss, v);
  EXPECT_EQ(ss.str().substr(0, 12), "index,value\n");
  EXPECT_EQ(read_sample_csv(ss), v);
}

TEST(SampleMetaIo, StreamRoundTrip) {
  const auto m = example_meta();
  std::stringstream ss;
  write_meta(ss, m);
  EXPECT_EQ(read_meta(ss), m);
}

TEST(SaveSamples, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "telegraph_sample_io_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "draws.csv";
  SampleBatch batch;
  batch.samples = {1.5, 2.25, 3.125};
  batch.n = 3;
  save_samples(csv, batch, example_meta());
  EXPECT_EQ(load_sample_csv(csv), batch.samples);
  EXPECT_EQ(load_meta(dir / "draws.meta"), example_meta());
  std::filesystem::remove_all(dir);
}

TEST(SaveSamples, UnwritablePathThrows) {
  SampleBatch batch;
  batch.samples = {1.0};
  EXPECT_THROW(save_samples("/nonexistent_dir_for_test/x.csv", batch, example_meta()),
               std::runtime_error);
}
