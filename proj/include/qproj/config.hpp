#pragma once

// Flat key=value configuration: one "key = value" pair per line (or CLI
// override), '#' comments, later assignments win. Typed getters record which
// keys were read so unknown keys can be reported as usage errors.

#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "qproj/common.hpp"

namespace qproj {

class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    Config cfg;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
      ++ln;
      cfg.add_line(line, path + ":" + std::to_string(ln));
    }
    return cfg;
  }

  /// "key=value" tokens (CLI overrides).
  void add_assignment(const std::string& kv) { add_line(kv, "argument '" + kv + "'"); }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& def) const {
    touch(key);
    auto it = values_.find(key);
    return it == values_.end() ? def : it->second;
  }
  std::string require_string(const std::string& key) const {
    touch(key);
    auto it = values_.find(key);
    if (it == values_.end()) throw config_error("missing required config key: " + key);
    return it->second;
  }

  double get_double(const std::string& key, double def) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      touch(key);
      return def;
    }
    return parse_double(key, it->second);
  }

  int get_int(const std::string& key, int def) const {
    touch(key);
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    try {
      std::size_t pos = 0;
      const int v = std::stoi(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': expected integer, got '" + it->second + "'");
    }
  }

  bool get_bool(const std::string& key, bool def) const {
    touch(key);
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    const std::string& s = it->second;
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw config_error("config key '" + key + "': expected boolean, got '" + s + "'");
  }

  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& def) const {
    touch(key);
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    std::vector<int> out;
    for (const std::string& tok : split_list(it->second)) {
      try {
        out.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw config_error("config key '" + key + "': expected integer list, got '" + it->second +
                           "'");
      }
    }
    if (out.empty()) throw config_error("config key '" + key + "': empty list");
    return out;
  }

  vecd get_double_list(const std::string& key, const vecd& def) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      touch(key);
      return def;
    }
    touch(key);
    vecd out;
    for (const std::string& tok : split_list(it->second)) out.push_back(parse_double(key, tok));
    if (out.empty()) throw config_error("config key '" + key + "': empty list");
    return out;
  }

  /// Keys present but never read by any getter.
  std::vector<std::string> unread_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
      if (!touched_.count(k)) out.push_back(k);
    return out;
  }

  const std::map<std::string, std::string>& raw() const { return values_; }

 private:
  void add_line(const std::string& raw, const std::string& where) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string{};
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error("expected key=value at " + where);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("empty key at " + where);
    values_[key] = val;
  }

  double parse_double(const std::string& key, const std::string& s) const {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': expected number, got '" + s + "'");
    }
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto a = tok.find_first_not_of(" \t");
      const auto b = tok.find_last_not_of(" \t");
      if (a != std::string::npos) out.push_back(tok.substr(a, b - a + 1));
    }
    return out;
  }

  void touch(const std::string& key) const { touched_.insert(key); }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> touched_;
};

}  // namespace qproj
