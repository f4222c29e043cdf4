#pragma once

#include <string>
#include <utility>

#include "json.hpp"

namespace finsemi {

// Ordered key/value report shared by every CLI command. Both renderings are
// byte-deterministic: keys keep insertion order and nothing depends on time
// or addresses.
class Report {
 public:
  using Value = nlohmann::ordered_json;

  explicit Report(std::string command) : command_(std::move(command)) {}

  Report& input(std::string const& key, Value value) {
    inputs_[key] = std::move(value);
    return *this;
  }

  Report& finding(std::string const& key, Value value) {
    findings_[key] = std::move(value);
    return *this;
  }

  Report& witness(Value record) {
    witnesses_.push_back(std::move(record));
    return *this;
  }

  std::string const& command() const noexcept { return command_; }
  Value const&       inputs() const noexcept { return inputs_; }
  Value const&       findings() const noexcept { return findings_; }
  Value const&       witnesses() const noexcept { return witnesses_; }

  std::string to_json() const {
    Value out         = Value::object();
    out["command"]    = command_;
    out["inputs"]     = inputs_.is_null() ? Value::object() : inputs_;
    out["findings"]   = findings_.is_null() ? Value::object() : findings_;
    out["witnesses"]  = witnesses_.is_null() ? Value::array() : witnesses_;
    return out.dump(2) + "\n";
  }

  std::string to_text() const {
    std::string out = "command: " + command_ + "\n";
    if (inputs_.is_object()) {
      for (auto const& [k, v] : inputs_.items()) {
        out += "input " + k + ": " + scalar(v) + "\n";
      }
    }
    if (findings_.is_object()) {
      for (auto const& [k, v] : findings_.items()) {
        out += k + ":";
        block(out, v, 1);
      }
    }
    if (witnesses_.is_array() && !witnesses_.empty()) {
      out += "witnesses:\n";
      for (auto const& w : witnesses_) {
        out += "  -";
        if (w.is_object()) {
          for (auto const& [k, v] : w.items()) {
            out += " " + k + "=" + scalar(v);
          }
        } else {
          out += " " + scalar(w);
        }
        out += "\n";
      }
    }
    return out;
  }

 private:
  static std::string scalar(Value const& v) {
    if (v.is_string()) {
      return v.get<std::string>();
    }
    return v.dump();
  }

  // Scalars stay on the key's line; containers nest one item per line.
  static void block(std::string& out, Value const& v, int depth) {
    std::string const pad(2 * depth, ' ');
    if (v.is_object()) {
      out += "\n";
      for (auto const& [k, x] : v.items()) {
        out += pad + k + ":";
        block(out, x, depth + 1);
      }
    } else if (v.is_array()) {
      if (v.empty()) {
        out += " (none)\n";
        return;
      }
      out += "\n";
      for (auto const& x : v) {
        if (x.is_structured()) {
          out += pad + "-";
          block(out, x, depth + 1);
        } else {
          out += pad + scalar(x) + "\n";
        }
      }
    } else {
      out += " " + scalar(v) + "\n";
    }
  }

  std::string command_;
  Value       inputs_;
  Value       findings_;
  Value       witnesses_;
};

}  // namespace finsemi
