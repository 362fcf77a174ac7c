#pragma once

// Certificate envelope and run manifests. Keys are sorted by nlohmann's
// default object type, so a dump is a canonical byte string.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "subshift.hpp"

namespace symdyn {

inline constexpr int certificate_version = 1;

// Missing or mistyped certificate fields; distinct from a failed check.
class SchemaError : public Error {
 public:
  using Error::Error;
};

inline json envelope(const std::string& claim, const std::string& module, json inputs, int scale, bool verdict,
                     json evidence) {
  return json{{"claim", claim},   {"module", module},     {"inputs", std::move(inputs)},
              {"scale", scale},   {"verdict", verdict},   {"evidence", std::move(evidence)},
              {"version", certificate_version}};
}

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string spec_hash(const SubshiftSpec& s) { return hex64(fnv1a(to_json(s).dump())); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path + " is not JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// Field access that reports schema problems instead of json exceptions.
template <class T>
T field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError("missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError("field '" + key + "' has the wrong type");
  }
}

inline const json& node(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError("missing field '" + key + "'");
  return j.at(key);
}

inline void check_envelope(const json& c) {
  for (auto key : {"claim", "module", "inputs", "scale", "verdict", "evidence", "version"}) node(c, key);
  if (field<int>(c, "version") != certificate_version)
    throw SchemaError("unsupported certificate version " + c.at("version").dump());
  if (!c.at("inputs").is_object() || !c.at("evidence").is_object())
    throw SchemaError("inputs and evidence must be objects");
}

struct RunManifest {
  std::vector<std::string> argv;  // after the program name
  std::map<std::string, std::string> spec_hashes;
  std::vector<int> scales;
  std::uint64_t seed = 0;
  std::vector<std::string> certificates;
  std::vector<std::string> certificate_hashes;

  json to_json() const {
    return json{{"argv", argv},     {"spec_hashes", spec_hashes},       {"scales", scales},
                {"seed", seed},     {"certificates", certificates},     {"certificate_hashes", certificate_hashes},
                {"version", certificate_version}};
  }

  static RunManifest from_json(const json& j) {
    RunManifest m;
    m.argv = field<std::vector<std::string>>(j, "argv");
    m.spec_hashes = field<std::map<std::string, std::string>>(j, "spec_hashes");
    m.scales = field<std::vector<int>>(j, "scales");
    m.seed = field<std::uint64_t>(j, "seed");
    m.certificates = field<std::vector<std::string>>(j, "certificates");
    m.certificate_hashes = field<std::vector<std::string>>(j, "certificate_hashes");
    if (m.certificates.size() != m.certificate_hashes.size())
      throw SchemaError("manifest lists certificates and hashes of different lengths");
    return m;
  }
};

}  // namespace symdyn
