// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/core/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy {

namespace {

enum class Kind { real, count, integer, boolean, string, path };

struct RawValue {
  std::string text;
  bool quoted = false;
};

struct KeySpec {
  std::string key;
  Kind kind;
  std::function<void(ServiceConfig&, const RawValue&, const std::filesystem::path&)> set;
};

[[noreturn]] void config_error(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::config, "config key '" + key + "': " + why);
}

double to_real(const std::string& key, const RawValue& v) {
  if (v.quoted) config_error(key, "expected a number");
  char* end = nullptr;
  const double d = std::strtod(v.text.c_str(), &end);
  if (v.text.empty() || end != v.text.c_str() + v.text.size()) {
    config_error(key, "expected a number, got '" + v.text + "'");
  }
  return d;
}

std::int64_t to_integer(const std::string& key, const RawValue& v) {
  if (v.quoted) config_error(key, "expected an integer");
  std::int64_t out = 0;
  const auto* first = v.text.data();
  const auto* last = first + v.text.size();
  if (!v.text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || v.text.empty()) {
    config_error(key, "expected an integer, got '" + v.text + "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const RawValue& v) {
  const auto i = to_integer(key, v);
  if (i < 0) config_error(key, "must be non-negative");
  return static_cast<std::size_t>(i);
}

bool to_bool(const std::string& key, const RawValue& v) {
  if (!v.quoted && v.text == "true") return true;
  if (!v.quoted && v.text == "false") return false;
  config_error(key, "expected true or false");
}

std::filesystem::path to_path(const RawValue& v, const std::filesystem::path& base) {
  if (v.text.empty()) return {};
  std::filesystem::path p(v.text);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

template <typename Get>
KeySpec real_key(std::string key, Get get) {
  return {key, Kind::real, [key, get](ServiceConfig& c, const RawValue& v, const auto&) {
            get(c) = to_real(key, v);
          }};
}
template <typename Get>
KeySpec count_key(std::string key, Get get) {
  return {key, Kind::count, [key, get](ServiceConfig& c, const RawValue& v, const auto&) {
            get(c) = to_count(key, v);
          }};
}
template <typename Get>
KeySpec bool_key(std::string key, Get get) {
  return {key, Kind::boolean, [key, get](ServiceConfig& c, const RawValue& v, const auto&) {
            get(c) = to_bool(key, v);
          }};
}
template <typename Get>
KeySpec string_key(std::string key, Get get) {
  return {key, Kind::string, [get](ServiceConfig& c, const RawValue& v, const auto&) {
            get(c) = v.text;
          }};
}
template <typename Get>
KeySpec path_key(std::string key, Get get) {
  return {key, Kind::path,
          [get](ServiceConfig& c, const RawValue& v, const std::filesystem::path& base) {
            get(c) = to_path(v, base);
          }};
}

const std::vector<KeySpec>& specs() {
  static const std::vector<KeySpec> table = {
      real_key("safety_threshold", [](ServiceConfig& c) -> auto& { return c.safety_threshold; }),
      real_key("intent_threshold", [](ServiceConfig& c) -> auto& { return c.intent_threshold; }),
      count_key("retrieve_k", [](ServiceConfig& c) -> auto& { return c.retrieve_k; }),
      count_key("rerank_m", [](ServiceConfig& c) -> auto& { return c.rerank_m; }),
      count_key("history_window", [](ServiceConfig& c) -> auto& { return c.history_window; }),
      count_key("excerpt_budget", [](ServiceConfig& c) -> auto& { return c.excerpt_budget; }),
      count_key("prompt_budget", [](ServiceConfig& c) -> auto& { return c.prompt_budget; }),
      {"request_timeout_ms", Kind::integer,
       [](ServiceConfig& c, const RawValue& v, const auto&) {
         c.request_timeout_ms = to_integer("request_timeout_ms", v);
       }},
      string_key("refusal_message", [](ServiceConfig& c) -> auto& { return c.refusal_message; }),
      bool_key("allow_degraded", [](ServiceConfig& c) -> auto& { return c.allow_degraded; }),
      count_key("hnsw.m", [](ServiceConfig& c) -> auto& { return c.hnsw.m; }),
      count_key("hnsw.ef_construction",
                [](ServiceConfig& c) -> auto& { return c.hnsw.ef_construction; }),
      count_key("hnsw.ef_search", [](ServiceConfig& c) -> auto& { return c.hnsw.ef_search; }),
      real_key("hnsw.level_lambda", [](ServiceConfig& c) -> auto& { return c.hnsw.level_lambda; }),
      {"hnsw.seed", Kind::integer,
       [](ServiceConfig& c, const RawValue& v, const auto&) {
         c.hnsw.seed = static_cast<std::uint64_t>(to_integer("hnsw.seed", v));
       }},
      bool_key("hnsw.heuristic_pruning",
               [](ServiceConfig& c) -> auto& { return c.hnsw.heuristic_pruning; }),
      count_key("embedding.dim", [](ServiceConfig& c) -> auto& { return c.embed_dim; }),
      string_key("embedding.endpoint",
                 [](ServiceConfig& c) -> auto& { return c.embedding_endpoint; }),
      string_key("reranker.endpoint", [](ServiceConfig& c) -> auto& { return c.reranker_endpoint; }),
      string_key("generation.backend", [](ServiceConfig& c) -> auto& { return c.backend; }),
      string_key("generation.endpoint",
                 [](ServiceConfig& c) -> auto& { return c.generation_endpoint; }),
      path_key("models.safety", [](ServiceConfig& c) -> auto& { return c.safety_model; }),
      path_key("models.intent", [](ServiceConfig& c) -> auto& { return c.intent_model; }),
      string_key("models.safety_endpoint",
                 [](ServiceConfig& c) -> auto& { return c.safety_endpoint; }),
      string_key("models.intent_endpoint",
                 [](ServiceConfig& c) -> auto& { return c.intent_endpoint; }),
      path_key("data.corpus", [](ServiceConfig& c) -> auto& { return c.corpus; }),
      path_key("data.index", [](ServiceConfig& c) -> auto& { return c.index; }),
      path_key("data.templates", [](ServiceConfig& c) -> auto& { return c.templates; }),
      path_key("data.session_log", [](ServiceConfig& c) -> auto& { return c.session_log; }),
      path_key("data.trace_log", [](ServiceConfig& c) -> auto& { return c.trace_log; }),
      string_key("server.host", [](ServiceConfig& c) -> auto& { return c.host; }),
      {"server.port", Kind::integer,
       [](ServiceConfig& c, const RawValue& v, const auto&) {
         c.port = static_cast<int>(to_integer("server.port", v));
       }},
  };
  return table;
}

const KeySpec* find_spec(const std::string& key) {
  for (const auto& s : specs()) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

// Parses a double-quoted basic string starting at s[pos] == '"'.
std::string parse_quoted(std::string_view s, std::size_t& pos, std::size_t line_no) {
  std::string out;
  ++pos;
  while (pos < s.size()) {
    const char c = s[pos++];
    if (c == '"') return out;
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (pos >= s.size()) break;
    const char e = s[pos++];
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'u': {
        if (pos + 4 > s.size()) break;
        const auto cp = std::strtoul(std::string(s.substr(pos, 4)).c_str(), nullptr, 16);
        text::append_utf8(out, static_cast<char32_t>(cp));
        pos += 4;
        break;
      }
      default:
        throw Error(ErrorKind::config,
                    "config line " + std::to_string(line_no) + ": bad escape in string");
    }
  }
  throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": unterminated string");
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

void ServiceConfig::validate() const {
  if (!(safety_threshold > 0.0 && safety_threshold < 1.0)) {
    config_error("safety_threshold", "must lie in the open interval (0, 1)");
  }
  if (!(intent_threshold > 0.0 && intent_threshold < 1.0)) {
    config_error("intent_threshold", "must lie in the open interval (0, 1)");
  }
  if (retrieve_k == 0) config_error("retrieve_k", "must be positive");
  if (rerank_m == 0) config_error("rerank_m", "must be positive");
  if (rerank_m > retrieve_k) {
    config_error("rerank_m", "must not exceed retrieve_k (" + std::to_string(rerank_m) + " > " +
                                 std::to_string(retrieve_k) + ")");
  }
  if (history_window == 0) config_error("history_window", "must be positive");
  if (excerpt_budget == 0) config_error("excerpt_budget", "must be positive");
  if (prompt_budget == 0) config_error("prompt_budget", "must be positive");
  if (request_timeout_ms <= 0) config_error("request_timeout_ms", "must be positive");
  if (hnsw.m < 2) config_error("hnsw.m", "must be at least 2");
  if (hnsw.ef_construction < hnsw.m) config_error("hnsw.ef_construction", "must be >= hnsw.m");
  if (hnsw.ef_search == 0) config_error("hnsw.ef_search", "must be positive");
  if (hnsw.level_lambda < 0.0) config_error("hnsw.level_lambda", "must be non-negative");
  if (embed_dim < 2) config_error("embedding.dim", "must be at least 2");
  if (backend != "mock" && backend != "remote") {
    config_error("generation.backend", "must be 'mock' or 'remote'");
  }
  if (backend == "remote" && generation_endpoint.empty()) {
    config_error("generation.endpoint", "required when generation.backend = \"remote\"");
  }
  if (port < 0 || port > 65535) config_error("server.port", "out of range");
}

ServiceConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ServiceConfig config;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw_line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = strip(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "config line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorKind::config, where + ": malformed section header");
      section = std::string(strip(line.substr(1, line.size() - 2)));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::config, where + ": expected key = value");
    }
    const std::string name(strip(line.substr(0, eq)));
    const std::string key = section.empty() ? name : section + "." + name;
    std::string_view rest = strip(line.substr(eq + 1));

    RawValue value;
    if (!rest.empty() && rest.front() == '"') {
      std::size_t p = 0;
      value.text = parse_quoted(rest, p, line_no);
      value.quoted = true;
      auto tail = strip(rest.substr(p));
      if (!tail.empty() && tail.front() != '#') {
        throw Error(ErrorKind::config, where + ": trailing characters after string");
      }
    } else {
      const auto hash = rest.find('#');
      value.text = std::string(strip(rest.substr(0, hash)));
      if (value.text.empty()) throw Error(ErrorKind::config, where + ": missing value for " + key);
    }

    const KeySpec* spec = find_spec(key);
    if (spec == nullptr) config_error(key, "unknown key (" + where + ")");
    if ((spec->kind == Kind::string || spec->kind == Kind::path) && !value.quoted) {
      config_error(key, "string values must be quoted");
    }
    spec->set(config, value, base_dir);
  }
  config.validate();
  return config;
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::config, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string env_var_for_key(std::string_view key) {
  std::string out = "EDUPSY_";
  for (char c : key) {
    out.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

void apply_env_overrides(ServiceConfig& config, const EnvLookup& lookup) {
  for (const auto& spec : specs()) {
    const auto v = lookup(env_var_for_key(spec.key));
    if (!v) continue;
    const bool stringy = spec.kind == Kind::string || spec.kind == Kind::path;
    spec.set(config, RawValue{*v, stringy}, std::filesystem::current_path());
  }
  config.validate();
}

void apply_env_overrides(ServiceConfig& config) {
  apply_env_overrides(config, [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  });
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& s : specs()) k.push_back(s.key);
    return k;
  }();
  return keys;
}

}  // namespace edupsy
