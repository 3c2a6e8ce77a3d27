#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "parse.hpp"
#include "relideal.hpp"

namespace tautjac {

// 64-bit FNV-1a, used as an integrity check on cached payloads.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// On-disk cache of relation ideals keyed by (genus, source cap, format
// version). Entries whose hash does not match their payload are ignored and
// rebuilt.
class IdealCache {
 public:
  explicit IdealCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path entry_path(int genus, int source_cap) const {
    return dir_ / ("ideal-g" + std::to_string(genus) + "-c" + std::to_string(source_cap) +
                   "-v" + std::to_string(RelationIdeal::kFormatVersion) + ".json");
  }

  std::optional<RelationIdeal> load(int genus, int source_cap) const {
    std::ifstream in(entry_path(genus, source_cap));
    if (!in) return std::nullopt;
    try {
      auto entry = nlohmann::ordered_json::parse(in);
      if (entry.at("format-version").get<int>() != RelationIdeal::kFormatVersion ||
          entry.at("genus").get<int>() != genus ||
          entry.at("source_cap").get<int>() != source_cap)
        return std::nullopt;
      const auto& payload = entry.at("ideal");
      if (entry.at("hash").get<std::string>() != hex64(fnv1a64(payload.dump())))
        return std::nullopt;
      RelationIdeal ideal = RelationIdeal::from_json(payload, parse_monomial);
      if (ideal.genus() != genus || ideal.source_cap() != source_cap) return std::nullopt;
      return ideal;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const RelationIdeal& ideal) const {
    std::filesystem::create_directories(dir_);
    nlohmann::ordered_json entry;
    auto payload = ideal.to_json();
    entry["format-version"] = RelationIdeal::kFormatVersion;
    entry["genus"] = ideal.genus();
    entry["source_cap"] = ideal.source_cap();
    entry["hash"] = hex64(fnv1a64(payload.dump()));
    entry["ideal"] = std::move(payload);
    auto path = entry_path(ideal.genus(), ideal.source_cap());
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << entry.dump() << '\n';
      if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  // Removes every cache entry; returns the number of files removed.
  std::size_t clear() const {
    std::size_t n = 0;
    if (!std::filesystem::exists(dir_)) return 0;
    for (const auto& ent : std::filesystem::directory_iterator(dir_)) {
      auto name = ent.path().filename().string();
      if (name.rfind("ideal-g", 0) == 0 && ent.path().extension() == ".json") {
        std::filesystem::remove(ent.path());
        ++n;
      }
    }
    return n;
  }

 private:
  std::filesystem::path dir_;
};

// Looks the ideal up in `cache` (when given), building and storing it on a
// miss.
inline RelationIdeal build_cached(int genus, int source_cap, const IdealCache* cache) {
  if (cache) {
    if (auto hit = cache->load(genus, source_cap)) return std::move(*hit);
  }
  RelationIdeal ideal = RelationIdeal::build(genus, source_cap);
  if (cache) cache->store(ideal);
  return ideal;
}

}  // namespace tautjac
