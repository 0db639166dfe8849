#pragma once
// Deterministic experiment output: an insertion-ordered JSON value and a CSV
// builder, both formatting doubles with a fixed "%.17g" so identical runs
// produce identical bytes.

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "qproj/common.hpp"

namespace qproj {

/// "%.17g" with non-finite values mapped to the tokens inf/-inf/nan.
inline std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// JSON value whose objects keep key insertion order. Non-finite numbers are
/// emitted as the strings "inf"/"-inf"/"nan" (JSON has no literal for them).
class Json {
 public:
  enum class Kind { Null, Bool, Int, Real, Str, Array, Object };

  Json() = default;
  Json(bool b) : kind_(Kind::Bool), bool_(b) {}
  Json(int v) : kind_(Kind::Int), int_(v) {}
  Json(long v) : kind_(Kind::Int), int_(v) {}
  Json(long long v) : kind_(Kind::Int), int_(v) {}
  Json(unsigned v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
  Json(unsigned long v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
  Json(double v) : kind_(Kind::Real), real_(v) {}
  Json(const char* s) : kind_(Kind::Str), str_(s) {}
  Json(std::string s) : kind_(Kind::Str), str_(std::move(s)) {}

  static Json array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
  }
  static Json object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
  }

  Kind kind() const { return kind_; }

  Json& push(Json v) {
    require(kind_ == Kind::Array, "json: push on a non-array");
    items_.push_back(std::move(v));
    return *this;
  }

  /// Sets key -> v, replacing in place if present (order is kept stable).
  Json& set(const std::string& key, Json v) {
    require(kind_ == Kind::Object, "json: set on a non-object");
    for (auto& kv : fields_)
      if (kv.first == key) {
        kv.second = std::move(v);
        return *this;
      }
    fields_.emplace_back(key, std::move(v));
    return *this;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    write(out, indent, 0);
    out.push_back('\n');
    return out;
  }

 private:
  static void escape_into(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  void write(std::string& out, int indent, int depth) const {
    const std::string pad(std::size_t(indent) * std::size_t(depth + 1), ' ');
    const std::string close_pad(std::size_t(indent) * std::size_t(depth), ' ');
    switch (kind_) {
      case Kind::Null: out += "null"; break;
      case Kind::Bool: out += bool_ ? "true" : "false"; break;
      case Kind::Int: {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%lld", int_);
        out += buf;
        break;
      }
      case Kind::Real:
        if (std::isfinite(real_)) {
          out += format_g17(real_);
        } else {
          escape_into(out, format_g17(real_));
        }
        break;
      case Kind::Str: escape_into(out, str_); break;
      case Kind::Array: {
        if (items_.empty()) {
          out += "[]";
          break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < items_.size(); ++i) {
          out += pad;
          items_[i].write(out, indent, depth + 1);
          if (i + 1 < items_.size()) out.push_back(',');
          out.push_back('\n');
        }
        out += close_pad + "]";
        break;
      }
      case Kind::Object: {
        if (fields_.empty()) {
          out += "{}";
          break;
        }
        out += "{\n";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
          out += pad;
          escape_into(out, fields_[i].first);
          out += ": ";
          fields_[i].second.write(out, indent, depth + 1);
          if (i + 1 < fields_.size()) out.push_back(',');
          out.push_back('\n');
        }
        out += close_pad + "}";
        break;
      }
    }
  }

  Kind kind_ = Kind::Null;
  bool bool_ = false;
  long long int_ = 0;
  double real_ = 0.0;
  std::string str_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> fields_;
};

/// CSV with a fixed header; numeric cells go through format_g17.
class CsvTable {
 public:
  explicit CsvTable(const std::vector<std::string>& header) : ncols_(header.size()) {
    append_row_of_strings(header);
  }

  CsvTable& row(const std::vector<double>& cells) {
    require(cells.size() == ncols_, "csv: row width mismatch");
    std::vector<std::string> formatted;
    formatted.reserve(cells.size());
    for (double v : cells) formatted.push_back(format_g17(v));
    append_row_of_strings(formatted);
    return *this;
  }

  CsvTable& row_mixed(const std::vector<std::string>& cells) {
    require(cells.size() == ncols_, "csv: row width mismatch");
    append_row_of_strings(cells);
    return *this;
  }

  const std::string& str() const { return data_; }

 private:
  void append_row_of_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) data_.push_back(',');
      data_ += cells[i];
    }
    data_.push_back('\n');
  }

  std::string data_;
  std::size_t ncols_ = 0;
};

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open for writing: " + path);
  f.write(content.data(), std::streamsize(content.size()));
  if (!f) throw config_error("write failed: " + path);
}

}  // namespace qproj
