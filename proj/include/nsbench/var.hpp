#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nsbench/error.hpp"

namespace nsbench {

/// Interned variable handle. Ids are assigned in first-use order and carry no
/// ordering meaning; use `canonical_less` for a stable, name-based order.
struct Var {
  std::uint32_t id = 0;
  friend auto operator<=>(const Var&, const Var&) = default;
};

struct VarHash {
  std::size_t operator()(Var v) const noexcept { return std::hash<std::uint32_t>{}(v.id); }
};

namespace detail {

struct VarEntry {
  std::string name;
  std::string prefix;
  std::vector<std::string> indices;
};

/// Names follow `prefix ('_' digits)+`, prefix alphabetic.
inline bool split_var_name(std::string_view name, VarEntry& out) {
  std::size_t i = 0;
  while (i < name.size() && ((name[i] >= 'a' && name[i] <= 'z') || (name[i] >= 'A' && name[i] <= 'Z'))) ++i;
  if (i == 0 || i == name.size()) return false;
  out.prefix = std::string(name.substr(0, i));
  out.indices.clear();
  while (i < name.size()) {
    if (name[i] != '_') return false;
    ++i;
    const std::size_t start = i;
    while (i < name.size() && name[i] >= '0' && name[i] <= '9') ++i;
    if (i == start) return false;
    out.indices.emplace_back(name.substr(start, i - start));
  }
  out.name = std::string(name);
  return true;
}

class VarRegistry {
 public:
  static VarRegistry& instance() {
    static VarRegistry registry;
    return registry;
  }

  Var intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) return Var{it->second};
    }
    VarEntry entry;
    if (!split_var_name(name, entry)) {
      throw ParseError("bad variable name '" + std::string(name) + "' (expected name_<uint>[_<uint>...])");
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(entry.name); it != ids_.end()) return Var{it->second};
    const auto id = static_cast<std::uint32_t>(entries_.size());
    ids_.emplace(entry.name, id);
    entries_.push_back(std::move(entry));
    return Var{id};
  }

  const VarEntry& entry(Var v) const {
    std::shared_lock lock(mutex_);
    return entries_.at(v.id);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<VarEntry> entries_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

inline int compare_index(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

}  // namespace detail

inline Var var(std::string_view name) { return detail::VarRegistry::instance().intern(name); }

inline Var var(std::string_view prefix, std::initializer_list<long long> indices) {
  std::string name(prefix);
  for (auto i : indices) {
    if (i < 0) throw InvalidArgument("negative variable index");
    name += "_" + std::to_string(i);
  }
  return var(name);
}

inline const std::string& var_name(Var v) { return detail::VarRegistry::instance().entry(v).name; }
inline const std::string& var_prefix(Var v) { return detail::VarRegistry::instance().entry(v).prefix; }
inline const std::vector<std::string>& var_indices(Var v) {
  return detail::VarRegistry::instance().entry(v).indices;
}

/// Prefix first, then indices numerically (x_2 < x_10), then index count.
inline bool canonical_less(Var a, Var b) {
  if (a == b) return false;
  const auto& ea = detail::VarRegistry::instance().entry(a);
  const auto& eb = detail::VarRegistry::instance().entry(b);
  if (ea.prefix != eb.prefix) return ea.prefix < eb.prefix;
  const std::size_t n = std::min(ea.indices.size(), eb.indices.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = detail::compare_index(ea.indices[i], eb.indices[i]); c != 0) return c < 0;
  }
  return ea.indices.size() < eb.indices.size();
}

/// x_1, ..., x_n
inline std::vector<Var> var_range(std::string_view prefix, int n, int first = 1) {
  std::vector<Var> out;
  out.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
  for (int i = 0; i < n; ++i) out.push_back(var(prefix, {first + i}));
  return out;
}

}  // namespace nsbench
