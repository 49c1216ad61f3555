#include "apnforge/checkpoint.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace apnforge {
namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Checkpoint::Checkpoint(std::string path, const std::string& campaign_id) : path_(std::move(path)) {
  namespace fs = std::filesystem;
  std::uintmax_t good_end = 0;
  bool have_header = false;
  if (fs::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read checkpoint " + path_);
    std::string line;
    std::uintmax_t offset = 0;
    while (std::getline(in, line)) {
      const bool complete = !in.eof();
      const std::uintmax_t next = offset + line.size() + (complete ? 1 : 0);
      if (!complete) break;  // torn tail
      ojson j;
      try {
        j = ojson::parse(line);
      } catch (const nlohmann::json::parse_error&) {
        break;
      }
      if (!have_header) {
        if (!j.contains("campaign_id"))
          throw std::runtime_error("checkpoint " + path_ + " has no header");
        if (j["campaign_id"] != campaign_id)
          throw std::runtime_error("checkpoint " + path_ + " belongs to campaign " +
                                   j["campaign_id"].get<std::string>() + ", not " + campaign_id);
        have_header = true;
      } else if (j.contains("sealed")) {
        sealed_ = true;
      } else if (j.contains("key") && j.contains("record")) {
        done_.emplace(j["key"].get<std::string>(), j["record"]);
      } else {
        break;
      }
      offset = next;
      good_end = offset;
    }
  }
  if (have_header) {
    fs::resize_file(path_, good_end);
    out_.open(path_, std::ios::binary | std::ios::app);
  } else {
    out_.open(path_, std::ios::binary | std::ios::trunc);
    ojson header;
    header["checkpoint"] = "apn-forge/1";
    header["campaign_id"] = campaign_id;
    header["started"] = utc_now();
    out_ << header.dump() << '\n';
    out_.flush();
  }
  if (!out_) throw std::runtime_error("cannot write checkpoint " + path_);
}

void Checkpoint::append(const std::vector<std::pair<std::string, ojson>>& records) {
  for (const auto& [key, rec] : records) {
    if (!done_.emplace(key, rec).second) continue;
    ojson line;
    line["key"] = key;
    line["record"] = rec;
    out_ << line.dump() << '\n';
  }
  out_.flush();
  if (!out_) throw std::runtime_error("write failed on checkpoint " + path_);
}

void Checkpoint::seal(std::uint64_t units) {
  if (sealed_) return;
  ojson line;
  line["sealed"] = true;
  line["units"] = units;
  out_ << line.dump() << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write failed on checkpoint " + path_);
  sealed_ = true;
}

}  // namespace apnforge
