#include "conequant/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifndef CONEQUANT_VERSION
#define CONEQUANT_VERSION "0.0.0"
#endif

namespace conequant {

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::set_config(const std::string& key, ojson value) { config_[key] = std::move(value); }

void Report::add_check(std::string id, std::string anchor, bool pass, std::string detail) {
  checks_.push_back({std::move(id), std::move(anchor), pass, std::move(detail)});
}

ojson& Report::table(const std::string& name) { return tables_[name]; }

bool Report::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

ojson Report::to_json() const {
  ojson out;
  out["meta"]["version"] = CONEQUANT_VERSION;
  out["meta"]["config"] = ojson::object();
  out["meta"]["config"]["command"] = command_;
  for (const auto& [key, value] : config_.items()) out["meta"]["config"][key] = value;
  out["checks"] = ojson::array();
  for (const auto& c : checks_) {
    ojson row;
    row["id"] = c.id;
    row["paper_anchor"] = c.anchor;
    row["status"] = c.pass ? "pass" : "fail";
    row["detail"] = c.detail;
    out["checks"].push_back(std::move(row));
  }
  out["tables"] = tables_;
  return out;
}

std::string Report::to_text() const {
  std::string s;
  for (const auto& c : checks_) s += std::string(c.pass ? "PASS " : "FAIL ") + c.id + ": " + c.detail + "\n";
  for (const auto& [name, value] : tables_.items()) s += name + ": " + value.dump() + "\n";
  const auto passed = std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  s += std::to_string(passed) + "/" + std::to_string(checks_.size()) + " checks passed\n";
  return s;
}

}  // namespace conequant
