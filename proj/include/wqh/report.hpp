#pragma once

// Pass/fail reporting for axiom suites. Each check carries a verdict and, on
// failure, the maximal-magnitude residual witness (block tuple and entry).

#include "wqh/blockalg.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace wqh {

enum class Verdict { Pass, Fail, Indeterminate };

struct CheckResult {
  std::string name;
  Verdict verdict;
  std::string witness;  // empty on pass
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string name, Verdict v, std::string witness = "") {
    checks.push_back({std::move(name), v, std::move(witness)});
  }
  void add_pass(std::string name) { add(std::move(name), Verdict::Pass); }

  // records equality of two tensors; on failure the witness is the largest
  // entry of the difference
  void check_equal(const std::string& name, const AlgTensor& lhs, const AlgTensor& rhs) {
    if (lhs == rhs) {
      add_pass(name);
      return;
    }
    AlgTensor d = lhs - rhs;
    std::string where;
    Cyc v = d.max_residual_witness(&where);
    add(name, Verdict::Fail, where + " residual " + v.str());
  }

  void merge(const Report& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.verdict != Verdict::Pass) return false;
    return true;
  }
  bool any_failed() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::Fail) return true;
    return false;
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << c.name << ": "
         << (c.verdict == Verdict::Pass ? "pass"
                                        : c.verdict == Verdict::Fail ? "FAIL" : "indeterminate");
      if (!c.witness.empty()) os << "  [" << c.witness << "]";
      os << "\n";
    }
    return os.str();
  }

  std::string to_json() const {
    auto esc = [](const std::string& s) {
      std::string o;
      for (char ch : s) {
        if (ch == '"' || ch == '\\') o += '\\';
        o += ch;
      }
      return o;
    };
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const auto& c = checks[i];
      os << (i ? "," : "") << "\n  {\"axiom\": \"" << esc(c.name) << "\", \"verdict\": \""
         << (c.verdict == Verdict::Pass ? "pass"
                                        : c.verdict == Verdict::Fail ? "fail" : "indeterminate")
         << "\"";
      if (!c.witness.empty()) os << ", \"witness\": \"" << esc(c.witness) << "\"";
      os << "}";
    }
    os << "\n]\n";
    return os.str();
  }
};

}  // namespace wqh
