// Copyright 2026 The darkspan Authors
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

#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "darkspan/error.hpp"
#include "darkspan/hash.hpp"
#include "darkspan/matrix.hpp"
#include "darkspan/textnorm.hpp"

namespace darkspan::embed {

enum class ProviderKind { Hashing, ExternalFile };

struct ProviderConfig {
  ProviderKind kind = ProviderKind::Hashing;
  std::size_t dim = 256;
  std::uint64_t seed = 42;
};

inline constexpr std::size_t kMinHashingDim = 8;

/// Signed feature hashing: each token adds +-1 at FNV-1a-64(seed || token)
/// mod dim, the sign taken from bit 63; the sum is L2-normalized. An empty
/// token list gives the zero vector.
inline std::vector<double> embed_hashing(const textnorm::TokenList& tokens, std::size_t dim,
                                         std::uint64_t seed) {
  if (dim < kMinHashingDim) {
    throw Error(ErrorCode::InvalidArgument, "hashing dimension must be >= 8");
  }
  std::vector<double> v(dim, 0.0);
  const Fnv1a64 seeded = Fnv1a64{}.update_u64(seed);
  for (const std::string& tok : tokens) {
    const std::uint64_t h = Fnv1a64(seeded).update(tok).digest();
    v[h % dim] += (h >> 63) == 0 ? 1.0 : -1.0;
  }
  const double n = norm(v);
  if (n > 0.0) {
    for (double& x : v) x /= n;
  }
  return v;
}

inline bool is_zero(std::span<const double> v) noexcept {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

/// Vectors keyed by snapshot id, in file order.
class VectorTable {
 public:
  VectorTable() = default;
  explicit VectorTable(std::size_t dim) : values_(0, dim), dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const Matrix& values() const noexcept { return values_; }

  /// Throws DuplicateId or DimensionMismatch.
  void add(std::string id, std::span<const double> v) {
    if (v.size() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "vector for " + id + " has " +
                                                    std::to_string(v.size()) + " values, expected " +
                                                    std::to_string(dim_));
    }
    if (!index_.emplace(id, ids_.size()).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate snapshot id " + id);
    }
    ids_.push_back(std::move(id));
    if (values_.cols() == 0) values_ = Matrix(0, dim_);
    values_.push_row(v);
  }

  std::optional<std::span<const double>> find(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return values_.row(it->second);
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  Matrix values_;
  std::size_t dim_ = 0;
};

/// Decimal form with 17 significant digits; round-trips every finite double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_vectors(std::ostream& out, const VectorTable& table) {
  out << "#dim=" << table.dim() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.ids()[i] << '\t';
    const auto row = table.values().row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

/// Parses the `#dim=<D>` + `<id>\t<v0> ... <v_{D-1}>` format. Errors carry the
/// 1-based line number.
inline VectorTable read_vectors(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "line 1: empty vectors file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("#dim=", 0) != 0) throw Error(ErrorCode::Parse, "line 1: expected #dim=<D>");
  char* end = nullptr;
  const unsigned long long dim = std::strtoull(line.c_str() + 5, &end, 10);
  if (end == line.c_str() + 5 || *end != '\0' || dim == 0) {
    throw Error(ErrorCode::Parse, "line 1: invalid dimension");
  }
  VectorTable table(static_cast<std::size_t>(dim));
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw Error(ErrorCode::Parse, where + "expected <id><TAB>");
    std::string id = line.substr(0, tab);
    row.clear();
    const char* p = line.c_str() + tab + 1;
    while (true) {
      while (*p == ' ' || *p == '\t') ++p;
      if (*p == '\0') break;
      errno = 0;
      char* stop = nullptr;
      const double v = std::strtod(p, &stop);
      if (stop == p) throw Error(ErrorCode::Parse, where + "malformed number");
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, where + "non-finite value");
      row.push_back(v);
      p = stop;
    }
    if (row.size() != table.dim()) {
      throw Error(ErrorCode::DimensionMismatch, where + "expected " + std::to_string(table.dim()) +
                                                    " values, found " + std::to_string(row.size()));
    }
    try {
      table.add(std::move(id), row);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  return table;
}

inline VectorTable load_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open vectors file " + path);
  return read_vectors(in);
}

inline void save_vectors(const std::string& path, const VectorTable& table) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write vectors file " + path);
  write_vectors(out, table);
}

}  // namespace darkspan::embed
