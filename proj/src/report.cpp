#include "gyralab/report.hpp"

namespace gyralab {

namespace {
constexpr size_t kMaxFailures = 20;
}

void Report::fail(const std::string& what) {
  ok = false;
  if (failures.size() < kMaxFailures) failures.push_back(what);
}

void Report::merge(const Report& other) {
  for (const auto& f : other.failures) fail(other.check + ": " + f);
  if (!other.ok) ok = false;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j = {{"check", check}, {"domain", subject}, {"status", ok ? "pass" : "fail"}};
  if (!failures.empty()) j["witness"] = failures;
  if (!data.empty()) j["data"] = data;
  return j;
}

}  // namespace gyralab
