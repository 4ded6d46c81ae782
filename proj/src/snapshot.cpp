// SPDX-License-Identifier: Apache-2.0
#include "kickent/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kickent/errors.hpp"

namespace kickent {

static_assert(std::endian::native == std::endian::little, "NPY '<c16' I/O assumes a little-endian host");

namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicLen = 6;

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
  std::filesystem::path p = stem;
  p += ext;
  return p;
}

std::string describe_shape(std::span<const std::size_t> shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    os << shape[i];
    if (shape.size() == 1 || i + 1 < shape.size()) os << ", ";
  }
  os << ')';
  return os.str();
}

void write_sidecar(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

nlohmann::json read_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "kickent-snapshot") throw IoError(path.string() + ": not a kickent snapshot");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

nlohmann::json params_json(const MapParams& p) { return {{"K1", p.K1}, {"K2", p.K2}, {"b", p.b}}; }

MapParams params_from(const nlohmann::json& j) {
  return MapParams{j.at("K1").get<double>(), j.at("K2").get<double>(), j.at("b").get<double>()};
}

}  // namespace

void write_npy(const std::filesystem::path& path, std::span<const cplx> data, std::span<const std::size_t> shape) {
  std::size_t count = 1;
  for (std::size_t s : shape) count *= s;
  if (count != data.size()) throw DimensionError("write_npy: shape does not match data length");

  std::string header = "{'descr': '<c16', 'fortran_order': False, 'shape': " + describe_shape(shape) + ", }";
  // Magic, version and length field take 10 bytes; total header is padded to 64.
  const std::size_t unpadded = kMagicLen + 4 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic, kMagicLen);
  const char version[2] = {1, 0};
  out.write(version, 2);
  const auto len = static_cast<std::uint16_t>(header.size());
  const char len_bytes[2] = {static_cast<char>(len & 0xff), static_cast<char>(len >> 8)};
  out.write(len_bytes, 2);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!out) throw IoError("write failed: " + path.string());
}

NpyArray read_npy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[kMagicLen];
  in.read(magic, kMagicLen);
  if (!in || std::string(magic, kMagicLen) != std::string(kMagic, kMagicLen)) {
    throw IoError(path.string() + ": not an NPY file");
  }
  unsigned char ver[2];
  in.read(reinterpret_cast<char*>(ver), 2);
  std::size_t header_len = 0;
  if (ver[0] == 1) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    header_len = b[0] | (static_cast<std::size_t>(b[1]) << 8);
  } else if (ver[0] == 2 || ver[0] == 3) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    header_len = b[0] | (static_cast<std::size_t>(b[1]) << 8) | (static_cast<std::size_t>(b[2]) << 16) |
                 (static_cast<std::size_t>(b[3]) << 24);
  } else {
    throw IoError(path.string() + ": unsupported NPY version");
  }
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw IoError(path.string() + ": truncated header");

  if (header.find("'descr': '<c16'") == std::string::npos) throw IoError(path.string() + ": dtype must be '<c16'");
  if (header.find("'fortran_order': False") == std::string::npos) {
    throw IoError(path.string() + ": Fortran-ordered arrays are not supported");
  }
  std::smatch m;
  static const std::regex shape_re(R"('shape':\s*\(([^)]*)\))");
  if (!std::regex_search(header, m, shape_re)) throw IoError(path.string() + ": missing shape");

  NpyArray arr;
  static const std::regex dim_re(R"(\d+)");
  const std::string dims = m[1].str();
  for (auto it = std::sregex_iterator(dims.begin(), dims.end(), dim_re); it != std::sregex_iterator(); ++it) {
    arr.shape.push_back(static_cast<std::size_t>(std::stoull(it->str())));
  }
  std::size_t count = 1;
  for (std::size_t s : arr.shape) count *= s;
  arr.data.resize(count);
  in.read(reinterpret_cast<char*>(arr.data.data()), static_cast<std::streamsize>(count * sizeof(cplx)));
  if (!in) throw IoError(path.string() + ": truncated data");
  return arr;
}

void save_snapshot(const std::filesystem::path& stem, const ClassicalState& state, const MapParams& params,
                   const std::string& config_hash) {
  const ModeCutoff& c = state.cutoff();
  const std::size_t lm = static_cast<std::size_t>(c.m_extent());
  const std::size_t ln = static_cast<std::size_t>(c.n_extent());
  const std::size_t shape[4] = {lm, ln, lm, ln};
  write_npy(with_ext(stem, ".npy"), state.coeffs(), shape);

  nlohmann::json j = {{"format", "kickent-snapshot"},
                      {"version", 1},
                      {"kind", "classical"},
                      {"cutoff", {{"M_m", c.M_m}, {"M_n", c.M_n}}},
                      {"params", params_json(params)},
                      {"time", state.time},
                      {"norm0", state.norm0},
                      {"norm", state.norm()},
                      {"raw_norm", state.raw_norm()},
                      {"config_hash", config_hash}};
  write_sidecar(with_ext(stem, ".json"), j);
}

void save_snapshot(const std::filesystem::path& stem, const QuantumState& state, const MapParams& params,
                   const std::string& config_hash) {
  const std::size_t n = static_cast<std::size_t>(state.dims.N);
  const std::size_t shape[2] = {n, n};
  write_npy(with_ext(stem, ".npy"), state.amps, shape);
  const double norm = state.norm();
  nlohmann::json j = {{"format", "kickent-snapshot"},
                      {"version", 1},
                      {"kind", "quantum"},
                      {"N", state.dims.N},
                      {"params", params_json(params)},
                      {"time", state.time},
                      {"norm", norm},
                      {"raw_norm", norm * norm},
                      {"config_hash", config_hash}};
  write_sidecar(with_ext(stem, ".json"), j);
}

ClassicalSnapshot load_classical_snapshot(const std::filesystem::path& stem, std::size_t memory_budget) {
  const nlohmann::json j = read_sidecar(with_ext(stem, ".json"));
  if (j.value("kind", "") != "classical") throw IoError(stem.string() + ": not a classical snapshot");
  const ModeCutoff cutoff{j.at("cutoff").at("M_m").get<int>(), j.at("cutoff").at("M_n").get<int>()};
  ClassicalState state(cutoff, memory_budget);
  const NpyArray arr = read_npy(with_ext(stem, ".npy"));
  const std::size_t lm = static_cast<std::size_t>(cutoff.m_extent());
  const std::size_t ln = static_cast<std::size_t>(cutoff.n_extent());
  if (arr.shape != std::vector<std::size_t>{lm, ln, lm, ln}) {
    throw IoError(stem.string() + ": tensor shape does not match the sidecar cutoff");
  }
  std::copy(arr.data.begin(), arr.data.end(), state.coeffs().begin());
  state.time = j.at("time").get<int>();
  state.norm0 = j.at("norm0").get<double>();
  return ClassicalSnapshot{std::move(state), params_from(j.at("params")), j.value("config_hash", "")};
}

QuantumSnapshot load_quantum_snapshot(const std::filesystem::path& stem, int max_N) {
  const nlohmann::json j = read_sidecar(with_ext(stem, ".json"));
  if (j.value("kind", "") != "quantum") throw IoError(stem.string() + ": not a quantum snapshot");
  QuantumState psi;
  psi.dims = QuantumDims{j.at("N").get<int>(), max_N};
  validate(psi.dims);
  NpyArray arr = read_npy(with_ext(stem, ".npy"));
  const std::size_t n = static_cast<std::size_t>(psi.dims.N);
  if (arr.shape != std::vector<std::size_t>{n, n}) throw IoError(stem.string() + ": state shape does not match N");
  psi.amps = std::move(arr.data);
  psi.time = j.at("time").get<int>();
  return QuantumSnapshot{std::move(psi), params_from(j.at("params")), j.value("config_hash", "")};
}

}  // namespace kickent
