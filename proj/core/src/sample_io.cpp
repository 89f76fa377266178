#include "telegraph/sample_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "telegraph/errors.hpp"

namespace telegraph {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::runtime_error("metadata: bad number for " + key);
  return d;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long u = 0;
  try {
    u = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::runtime_error("metadata: bad integer for " + key);
  return u;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path meta_path_for(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".meta");
  return p;
}

void write_sample_csv(std::ostream& os, const std::vector<double>& samples) {
  os << "index,value\n";
  for (std::size_t i = 0; i < samples.size(); ++i) os << i << ',' << format_double(samples[i]) << '\n';
}

void write_meta(std::ostream& os, const SampleMeta& meta) {
  os << "lambda=" << format_double(meta.lambda) << '\n'
     << "mu=" << format_double(meta.mu) << '\n'
     << "x=" << format_double(meta.x) << '\n'
     << "m_kind=" << meta.m_kind << '\n'
     << "m_params=" << meta.m_params << '\n'
     << "n=" << meta.n << '\n'
     << "seed=" << meta.seed << '\n'
     << "chunk_size=" << meta.chunk_size << '\n'
     << "target=" << meta.target << '\n';
}

std::vector<double> read_sample_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "index,value") {
    throw std::runtime_error("sample CSV: missing 'index,value' header");
  }
  std::vector<double> out;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("sample CSV: malformed row '" + line + "'");
    const std::uint64_t idx = to_u64("index", line.substr(0, comma));
    if (idx != out.size()) throw std::runtime_error("sample CSV: indices out of order");
    out.push_back(to_double("value", line.substr(comma + 1)));
  }
  return out;
}

SampleMeta read_meta(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("metadata: malformed line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::runtime_error("metadata: missing key " + k);
    return it->second;
  };
  SampleMeta m;
  m.lambda = to_double("lambda", get("lambda"));
  m.mu = to_double("mu", get("mu"));
  m.x = to_double("x", get("x"));
  m.m_kind = get("m_kind");
  m.m_params = get("m_params");
  m.n = to_u64("n", get("n"));
  m.seed = to_u64("seed", get("seed"));
  m.chunk_size = to_u64("chunk_size", get("chunk_size"));
  m.target = get("target");
  return m;
}

void save_samples(const std::filesystem::path& csv_path, const SampleBatch& batch,
                  const SampleMeta& meta) {
  {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
    write_sample_csv(out, batch.samples);
    if (!out) throw std::runtime_error("write failed: " + csv_path.string());
  }
  const auto mp = meta_path_for(csv_path);
  std::ofstream out(mp);
  if (!out) throw std::runtime_error("cannot open " + mp.string() + " for writing");
  write_meta(out, meta);
  if (!out) throw std::runtime_error("write failed: " + mp.string());
}

std::vector<double> load_sample_csv(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path.string());
  return read_sample_csv(in);
}

SampleMeta load_meta(const std::filesystem::path& meta_path) {
  std::ifstream in(meta_path);
  if (!in) throw std::runtime_error("cannot open " + meta_path.string());
  return read_meta(in);
}

}  // namespace telegraph
