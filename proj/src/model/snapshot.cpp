// Copyright 2026 The nasrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nasrec/model/snapshot.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "nasrec/common/errors.hpp"

namespace nasrec {

static_assert(std::endian::native == std::endian::little,
              "snapshot encoding assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'N', 'A', 'S', 'R', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  template <typename T>
  void put(T value) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }
  void put_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }
  void put_block(std::string_view name, std::size_t rows, std::size_t cols,
                 std::span<const double> values) {
    put<std::uint32_t>(static_cast<std::uint32_t>(name.size()));
    put_bytes(name.data(), name.size());
    put<std::uint64_t>(rows);
    put<std::uint64_t>(cols);
    put_bytes(values.data(), values.size() * sizeof(double));
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    T value;
    need(sizeof(T));
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string get_string(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void get_doubles(std::span<double> out) {
    need(out.size() * sizeof(double));
    std::memcpy(out.data(), bytes_.data() + pos_, out.size() * sizeof(double));
    pos_ += out.size() * sizeof(double);
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DataError("snapshot truncated");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc(std::span<const std::uint8_t> bytes) {
  uLong c = crc32(0L, Z_NULL, 0);
  c = crc32(c, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(c);
}

void read_block(Reader& r, std::string_view expected_name, std::size_t rows, std::size_t cols,
                std::span<double> out) {
  const auto name_len = r.get<std::uint32_t>();
  if (name_len > 256) throw DataError("snapshot: implausible block name length");
  const std::string name = r.get_string(name_len);
  const auto file_rows = r.get<std::uint64_t>();
  const auto file_cols = r.get<std::uint64_t>();
  if (name != expected_name) {
    throw DataError("snapshot: expected block '" + std::string(expected_name) + "', found '" +
                    name + "'");
  }
  if (file_rows != rows || file_cols != cols) {
    throw DataError("snapshot: block '" + name + "' has shape " + std::to_string(file_rows) + "x" +
                    std::to_string(file_cols) + ", expected " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  r.get_doubles(out);
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kNas:
      return "nas";
    case ModelKind::kNasStar:
      return "nas_star";
    case ModelKind::kBprMf:
      return "bpr_mf";
  }
  return "nas";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "nas") return ModelKind::kNas;
  if (name == "nas_star") return ModelKind::kNasStar;
  if (name == "bpr_mf") return ModelKind::kBprMf;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected nas, nas_star or bpr_mf)");
}

std::size_t ModelSnapshot::parameter_count() const {
  std::size_t total = factors.users.size() + factors.items.size();
  if (params) total += params->size();
  return total;
}

std::vector<std::string> snapshot_block_names(const ModelSnapshot& snapshot) {
  std::vector<std::string> names{"factors.users", "factors.items"};
  if (snapshot.params) {
    for (const auto& b : snapshot.params->blocks()) names.push_back(b.name);
  }
  return names;
}

std::vector<std::uint8_t> serialize_snapshot(const ModelSnapshot& s) {
  if (s.factors.users.cols() != s.factors.items.cols()) {
    throw ContractViolation("snapshot: user and item factors disagree on dimension");
  }
  if (s.params && s.params->dim() != s.dim()) {
    throw ContractViolation("snapshot: parameter dimension does not match factors");
  }
  Writer w;
  w.put_bytes(kMagic, sizeof(kMagic));
  w.put<std::uint32_t>(kVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(s.kind));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(s.mode));
  w.put<std::uint64_t>(s.num_users());
  w.put<std::uint64_t>(s.num_items());
  w.put<std::uint64_t>(s.dim());
  w.put<std::uint64_t>(s.depth());
  w.put<std::uint64_t>(s.k_max);
  w.put<std::uint8_t>(s.params && s.params->has_attention() ? 1 : 0);
  const std::size_t blocks = 2 + (s.params ? s.params->blocks().size() : 0);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(blocks));
  w.put_block("factors.users", s.factors.users.rows(), s.factors.users.cols(),
              s.factors.users.flat());
  w.put_block("factors.items", s.factors.items.rows(), s.factors.items.cols(),
              s.factors.items.flat());
  if (s.params) {
    for (std::size_t i = 0; i < s.params->blocks().size(); ++i) {
      const auto& b = s.params->blocks()[i];
      w.put_block(b.name, b.rows, b.cols, s.params->vec(i));
    }
  }
  w.put<std::uint32_t>(crc(w.bytes()));
  return w.take();
}

ModelSnapshot deserialize_snapshot(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) + 4 ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw DataError("not a model snapshot (bad magic)");
  }
  const auto body = bytes.first(bytes.size() - 4);
  std::uint32_t stored = 0;
  std::memcpy(&stored, bytes.data() + body.size(), 4);
  if (crc(body) != stored) throw DataError("snapshot checksum mismatch (file is corrupt)");

  Reader r(body);
  r.get_string(sizeof(kMagic));
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) {
    throw DataError("unsupported snapshot version " + std::to_string(version));
  }
  ModelSnapshot s;
  const auto kind = r.get<std::uint32_t>();
  const auto mode = r.get<std::uint32_t>();
  if (kind > 2 || mode > 2) throw DataError("snapshot: invalid model kind or attention mode");
  s.kind = static_cast<ModelKind>(kind);
  s.mode = static_cast<AttentionMode>(mode);
  const auto n = r.get<std::uint64_t>();
  const auto m = r.get<std::uint64_t>();
  const auto d = r.get<std::uint64_t>();
  const auto h = r.get<std::uint64_t>();
  s.k_max = r.get<std::uint64_t>();
  const bool attention = r.get<std::uint8_t>() != 0;
  const auto blocks = r.get<std::uint32_t>();
  if (d == 0 || d > 4096 || n * d > (std::size_t{1} << 34) || m * d > (std::size_t{1} << 34)) {
    throw DataError("snapshot: implausible shape header");
  }
  s.factors.users = DenseMatrix(n, d);
  s.factors.items = DenseMatrix(m, d);
  if (s.kind != ModelKind::kBprMf) {
    if (h == 0 || h > 64) throw DataError("snapshot: implausible depth");
    s.params.emplace(d, h, attention);
  }
  const std::size_t expected_blocks = 2 + (s.params ? s.params->blocks().size() : 0);
  if (blocks != expected_blocks) {
    throw DataError("snapshot: expected " + std::to_string(expected_blocks) + " blocks, found " +
                    std::to_string(blocks));
  }
  read_block(r, "factors.users", n, d, s.factors.users.flat());
  read_block(r, "factors.items", m, d, s.factors.items.flat());
  if (s.params) {
    for (std::size_t i = 0; i < s.params->blocks().size(); ++i) {
      const auto& b = s.params->blocks()[i];
      read_block(r, b.name, b.rows, b.cols, s.params->vec(i));
    }
  }
  if (r.remaining() != 0) throw DataError("snapshot: trailing bytes");
  return s;
}

void save_snapshot(const std::filesystem::path& path, const ModelSnapshot& snapshot) {
  const auto bytes = serialize_snapshot(snapshot);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write snapshot " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing snapshot " + path.string());
}

ModelSnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open snapshot " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_snapshot(bytes);
}

std::unique_ptr<Recommender> make_recommender(const ModelSnapshot& snapshot,
                                              const SocialGraph& graph) {
  if (snapshot.kind == ModelKind::kBprMf || !snapshot.params) {
    return std::make_unique<DotProductRecommender>(snapshot.factors);
  }
  return std::make_unique<NasRecommender>(snapshot.factors, *snapshot.params, snapshot.mode,
                                          snapshot.k_max, graph);
}

}  // namespace nasrec
