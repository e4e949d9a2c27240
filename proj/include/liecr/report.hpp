#ifndef LIECR_REPORT_HPP
#define LIECR_REPORT_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace liecr {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

/// Structured pass/fail outcome of one verifier. Numerical witnesses
/// (ranks, residuals, offending vectors) live in `data`; composite checks
/// nest their parts in `sub`.
struct VerificationReport {
  std::string check;
  bool pass = true;
  std::string message;
  Json data = Json::object();
  std::vector<VerificationReport> sub;

  VerificationReport() = default;
  explicit VerificationReport(std::string name) : check(std::move(name)) {}

  void fail(const std::string& why) {
    pass = false;
    if (message.empty()) {
      message = why;
    } else {
      message += "; " + why;
    }
  }

  /// Appends a sub-report; a failing child fails the parent unless `gating` is false.
  VerificationReport& add(VerificationReport child, bool gating = true) {
    if (gating && !child.pass) fail(child.check + " failed");
    sub.push_back(std::move(child));
    return *this;
  }

  const VerificationReport* find(const std::string& name) const {
    if (check == name) return this;
    for (const auto& s : sub) {
      if (const auto* hit = s.find(name)) return hit;
    }
    return nullptr;
  }

  Json to_json() const {
    Json out;
    out["check"] = check;
    out["pass"] = pass;
    if (!message.empty()) out["message"] = message;
    if (!data.empty()) out["data"] = data;
    if (!sub.empty()) {
      Json arr = Json::array();
      for (const auto& s : sub) arr.push_back(s.to_json());
      out["sub"] = std::move(arr);
    }
    return out;
  }

  static VerificationReport from_json(const Json& j) {
    VerificationReport r(j.at("check").get<std::string>());
    r.pass = j.at("pass").get<bool>();
    if (j.contains("message")) r.message = j["message"].get<std::string>();
    if (j.contains("data")) r.data = j["data"];
    if (j.contains("sub")) {
      for (const auto& s : j["sub"]) r.sub.push_back(from_json(s));
    }
    return r;
  }
};

}  // namespace liecr

#endif  // LIECR_REPORT_HPP
