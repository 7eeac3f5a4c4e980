#include "wdd/cli/selfcheck.hpp"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace wdd::cli {

int selfcheck(std::ostream& out, std::uint64_t seed, bool json, const identities::Faults& faults) {
  const std::vector<identities::Check> checks = identities::full_suite(seed, faults);

  struct Summary {
    std::size_t total = 0;
    std::size_t failed = 0;
    double worst = 0.0;
    std::vector<const identities::Check*> failures;
  };
  std::vector<std::string> order;
  std::map<std::string, Summary> suites;
  bool all = true;
  for (const auto& c : checks) {
    if (!suites.count(c.suite)) order.push_back(c.suite);
    Summary& s = suites[c.suite];
    ++s.total;
    s.worst = std::max(s.worst, c.max_rel_error);
    if (!c.passed) {
      ++s.failed;
      s.failures.push_back(&c);
      all = false;
    }
  }

  if (json) {
    nlohmann::json j;
    j["seed"] = seed;
    j["passed"] = all;
    j["suites"] = nlohmann::json::array();
    for (const auto& name : order) {
      const Summary& s = suites[name];
      nlohmann::json js{{"suite", name}, {"checks", s.total}, {"failed", s.failed},
                        {"max_rel_error", s.worst}, {"passed", s.failed == 0}};
      js["failures"] = nlohmann::json::array();
      for (const auto* c : s.failures) {
        js["failures"].push_back({{"name", c->name}, {"max_rel_error", c->max_rel_error}, {"tolerance", c->tolerance}});
      }
      j["suites"].push_back(js);
    }
    out << j.dump(2) << "\n";
    return all ? 0 : 1;
  }

  char buf[256];
  for (const auto& name : order) {
    const Summary& s = suites[name];
    std::snprintf(buf, sizeof buf, "%s %s checks=%zu max_rel_error=%.3e", s.failed ? "FAIL" : "PASS", name.c_str(),
                  s.total, s.worst);
    out << buf << "\n";
    for (const auto* c : s.failures) {
      std::snprintf(buf, sizeof buf, "  failed: %s (%.3e > %.1e)", c->name.c_str(), c->max_rel_error, c->tolerance);
      out << buf << "\n";
    }
  }
  out << (all ? "selfcheck: all suites passed" : "selfcheck: FAILED") << " (seed=" << seed << ")\n";
  return all ? 0 : 1;
}

}  // namespace wdd::cli
