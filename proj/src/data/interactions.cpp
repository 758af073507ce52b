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

#include "nasrec/data/interactions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nasrec/common/errors.hpp"

namespace nasrec {

Delimiter parse_delimiter(std::string_view format) {
  if (format == "tsv" || format == "tab") return Delimiter::kTab;
  if (format == "csv" || format == "comma") return Delimiter::kComma;
  throw ConfigError("unknown file format '" + std::string(format) + "' (expected tsv or csv)");
}

std::string_view delimiter_name(Delimiter d) { return d == Delimiter::kTab ? "tsv" : "csv"; }

namespace detail {

namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}
}  // namespace

std::vector<std::string_view> split_fields(std::string_view line, Delimiter delimiter) {
  std::vector<std::string_view> fields;
  line = trim(line);
  if (delimiter == Delimiter::kComma) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool is_skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

std::optional<double> parse_real(std::string_view field) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> parse_index(std::string_view field) {
  std::uint64_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace detail

std::uint32_t IdMap::intern(std::string_view original) {
  std::string key(original);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto idx = static_cast<std::uint32_t>(originals_.size());
  originals_.push_back(key);
  index_.emplace(std::move(key), idx);
  return idx;
}

std::optional<std::uint32_t> IdMap::find(std::string_view original) const {
  auto it = index_.find(std::string(original));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void IdMap::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t i = 0; i < originals_.size(); ++i) out << originals_[i] << '\t' << i << '\n';
}

IdMap IdMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  IdMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string::npos) throw ParseError(path.string(), line_no, "expected original<TAB>index");
    const auto idx = detail::parse_index(std::string_view(line).substr(tab + 1));
    if (!idx || *idx != map.size()) {
      throw ParseError(path.string(), line_no, "dense indices must be consecutive from 0");
    }
    map.intern(std::string_view(line).substr(0, tab));
    if (map.size() != *idx + 1) throw ParseError(path.string(), line_no, "duplicate original id");
  }
  return map;
}

InteractionSet::InteractionSet(std::size_t num_users, std::size_t num_items,
                               std::vector<Interaction> triples)
    : num_users_(num_users), num_items_(num_items), triples_(std::move(triples)) {
  for (const Interaction& t : triples_) {
    if (t.user >= num_users_ || t.item >= num_items_) {
      throw DataError("interaction (" + std::to_string(t.user) + ", " + std::to_string(t.item) +
                      ") out of range for " + std::to_string(num_users_) + " users x " +
                      std::to_string(num_items_) + " items");
    }
    if (!std::isfinite(t.rating)) {
      throw DataError("non-finite rating for user " + std::to_string(t.user) + ", item " +
                      std::to_string(t.item));
    }
  }
  std::sort(triples_.begin(), triples_.end(), [](const Interaction& a, const Interaction& b) {
    return a.user != b.user ? a.user < b.user : a.item < b.item;
  });
  for (std::size_t i = 1; i < triples_.size(); ++i) {
    if (triples_[i].user == triples_[i - 1].user && triples_[i].item == triples_[i - 1].item) {
      throw DataError("duplicate interaction for user " + std::to_string(triples_[i].user) +
                      ", item " + std::to_string(triples_[i].item));
    }
  }
  offsets_.assign(num_users_ + 1, 0);
  items_.reserve(triples_.size());
  for (const Interaction& t : triples_) {
    ++offsets_[t.user + 1];
    items_.push_back(t.item);
  }
  for (std::size_t u = 0; u < num_users_; ++u) offsets_[u + 1] += offsets_[u];
}

std::span<const Interaction> InteractionSet::user_ratings(UserId user) const {
  if (user >= num_users_) return {};
  return std::span<const Interaction>(triples_).subspan(offsets_[user],
                                                        offsets_[user + 1] - offsets_[user]);
}

std::span<const ItemId> InteractionSet::user_items(UserId user) const {
  if (user >= num_users_) return {};
  return std::span<const ItemId>(items_).subspan(offsets_[user],
                                                 offsets_[user + 1] - offsets_[user]);
}

bool InteractionSet::contains(UserId user, ItemId item) const {
  const auto items = user_items(user);
  return std::binary_search(items.begin(), items.end(), item);
}

double InteractionSet::density() const {
  if (num_users_ == 0 || num_items_ == 0) return 0.0;
  return static_cast<double>(triples_.size()) /
         (static_cast<double>(num_users_) * static_cast<double>(num_items_));
}

LoadedInteractions load_interactions(const std::filesystem::path& path, Delimiter delimiter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open interaction file " + path.string());
  LoadedInteractions out;
  std::vector<Interaction> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line, delimiter);
    if (fields.size() < 3 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path.string(), line_no, "expected user, item, rating");
    }
    const auto rating = detail::parse_real(fields[2]);
    if (!rating) {
      throw ParseError(path.string(), line_no, "invalid rating '" + std::string(fields[2]) + "'");
    }
    triples.push_back({out.users.intern(fields[0]), out.items.intern(fields[1]), *rating});
  }
  out.data = InteractionSet(out.users.size(), out.items.size(), std::move(triples));
  return out;
}

InteractionSet load_indexed_interactions(const std::filesystem::path& path,
                                         std::size_t num_users, std::size_t num_items,
                                         Delimiter delimiter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open interaction file " + path.string());
  std::vector<Interaction> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line, delimiter);
    if (fields.size() < 3) throw ParseError(path.string(), line_no, "expected user, item, rating");
    const auto user = detail::parse_index(fields[0]);
    const auto item = detail::parse_index(fields[1]);
    const auto rating = detail::parse_real(fields[2]);
    if (!user || !item || !rating) {
      throw ParseError(path.string(), line_no, "expected dense integer ids and a real rating");
    }
    if (*user >= num_users || *item >= num_items) {
      throw ParseError(path.string(), line_no, "id out of range");
    }
    triples.push_back({static_cast<UserId>(*user), static_cast<ItemId>(*item), *rating});
  }
  return InteractionSet(num_users, num_items, std::move(triples));
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void save_interactions(const std::filesystem::path& path, const InteractionSet& data,
                       Delimiter delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  const char sep = delimiter == Delimiter::kTab ? '\t' : ',';
  for (const Interaction& t : data.triples()) {
    out << t.user << sep << t.item << sep << format_double(t.rating) << '\n';
  }
}

}  // namespace nasrec
