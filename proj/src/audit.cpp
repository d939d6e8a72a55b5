#include "equisym/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace equisym {

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json AuditReport::to_json() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["mode"] = mode;
  j["pass"] = pass;
  j["max_violation"] = number(max_violation);
  j["tolerance"] = number(tolerance);
  j["seed"] = seed;
  j["checked"] = checked;
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : witnesses)
    w.push_back({{"g", x.element}, {"x", x.point}, {"violation", number(x.violation)}});
  j["witnesses"] = std::move(w);
  if (!p_values.empty()) {
    nlohmann::json p = nlohmann::json::array();
    for (double v : p_values) p.push_back(number(v));
    j["p_values"] = std::move(p);
  }
  if (!std::isnan(alpha)) j["alpha"] = alpha;
  if (!checks.empty()) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& r : checks) c.push_back(r.to_json());
    j["checks"] = std::move(c);
  }
  if (!details.empty()) j["details"] = details;
  return j;
}

AuditReport summarize(std::string instance, std::string mode, const std::vector<Observation>& obs,
                      double tolerance, std::uint64_t seed, std::size_t max_witnesses) {
  AuditReport r;
  r.instance = std::move(instance);
  r.mode = std::move(mode);
  r.tolerance = tolerance;
  r.seed = seed;
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i].skipped) continue;
    ++r.checked;
    const double v = std::isnan(obs[i].violation) ? std::numeric_limits<double>::infinity()
                                                  : obs[i].violation;
    r.max_violation = std::max(r.max_violation, v);
    if (v > tolerance) bad.push_back(i);
  }
  r.pass = bad.empty();
  std::stable_sort(bad.begin(), bad.end(),
                   [&](std::size_t a, std::size_t b) { return obs[a].violation > obs[b].violation; });
  if (bad.size() > max_witnesses) bad.resize(max_witnesses);
  for (std::size_t i : bad) r.witnesses.push_back({obs[i].element, obs[i].point, obs[i].violation});
  return r;
}

AuditReport combine(std::string instance, std::vector<AuditReport> parts, std::uint64_t seed) {
  AuditReport r;
  r.instance = std::move(instance);
  r.mode = "composite";
  r.seed = seed;
  std::sort(parts.begin(), parts.end(),
            [](const AuditReport& a, const AuditReport& b) { return a.instance < b.instance; });
  for (const auto& p : parts) {
    r.pass = r.pass && p.pass;
    r.max_violation = std::max(r.max_violation, p.max_violation);
    r.checked += p.checked;
  }
  r.checks = std::move(parts);
  return r;
}

}  // namespace equisym
