#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace conequant {

using ojson = nlohmann::ordered_json;

/// Rounds to 15 significant digits so that serialized reports are stable.
double round15(double x);

struct Check {
  std::string id;
  std::string anchor;  // the mathematical statement being validated
  bool pass = false;
  std::string detail;
};

/// Machine-readable run report: {meta: {version, config}, checks: [...], tables: {...}}.
class Report {
public:
  explicit Report(std::string command);

  void set_config(const std::string& key, ojson value);
  void add_check(std::string id, std::string anchor, bool pass, std::string detail);
  ojson& table(const std::string& name);

  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const;

  ojson to_json() const;
  /// One line per check, then a short table summary.
  std::string to_text() const;

private:
  std::string command_;
  ojson config_ = ojson::object();
  std::vector<Check> checks_;
  ojson tables_ = ojson::object();
};

}  // namespace conequant
