// Pass/fail report shared by all verifiers.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gyralab {

struct Report {
  Report() = default;
  Report(std::string c, std::string s) : check(std::move(c)), subject(std::move(s)) {}

  std::string check;
  std::string subject;
  bool ok = true;
  std::vector<std::string> failures;  // itemized, first few kept
  nlohmann::json data = nlohmann::json::object();

  void fail(const std::string& what);
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void merge(const Report& other);
  nlohmann::json to_json() const;
};

}  // namespace gyralab
