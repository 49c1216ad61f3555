// Append-only checkpoint file for campaigns.
//
//   line 1  {"checkpoint":"apn-forge/1","campaign_id":"...","started":"..."}
//   then    {"key":"...","record":{...}}   one per finished unit
//   last    {"sealed":true,"units":N}      written once the campaign completes
//
// A torn trailing line (crash mid-write) is dropped on open.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace apnforge {

using ojson = nlohmann::ordered_json;

class Checkpoint {
public:
  /// Opens or creates `path`.  An existing file must carry the same
  /// campaign id, else std::runtime_error.
  Checkpoint(std::string path, const std::string& campaign_id);

  const std::map<std::string, ojson>& completed() const noexcept { return done_; }
  bool sealed() const noexcept { return sealed_; }

  /// Appends records and flushes.  Keys already present are ignored.
  void append(const std::vector<std::pair<std::string, ojson>>& records);
  void seal(std::uint64_t units);

private:
  std::string path_;
  std::ofstream out_;
  std::map<std::string, ojson> done_;
  bool sealed_ = false;
};

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& text);

}  // namespace apnforge
