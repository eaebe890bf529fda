#pragma once

// Claim-by-claim verification reports shared by every verifier and the CLI.

#include <string>
#include <utility>
#include <vector>

namespace tafd {

struct Claim {
  std::string name;
  std::string anchor;  // the mathematical statement being checked
  bool passed = false;
  std::string detail;  // expanded sides or numbers on failure, a short note on success
  bool inconclusive = false;  // undecided at the edge of a truncation; never a failure

  std::string status() const { return inconclusive ? "inconclusive" : passed ? "pass" : "fail"; }
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  void add(std::string name, std::string anchor, bool passed, std::string detail = {}) {
    claims_.push_back({std::move(name), std::move(anchor), passed, std::move(detail)});
  }
  void add_inconclusive(std::string name, std::string anchor, std::string detail = {}) {
    claims_.push_back({std::move(name), std::move(anchor), true, std::move(detail), true});
  }
  void append(const Report& other) { claims_.insert(claims_.end(), other.claims_.begin(), other.claims_.end()); }

  bool all_passed() const {
    for (const auto& c : claims_)
      if (!c.passed) return false;
    return true;
  }
  std::size_t inconclusive() const {
    std::size_t n = 0;
    for (const auto& c : claims_) n += c.inconclusive ? 1 : 0;
    return n;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : claims_) n += c.passed ? 0 : 1;
    return n;
  }

  const std::string& title() const { return title_; }
  const std::vector<Claim>& claims() const { return claims_; }
  const Claim* find(const std::string& name) const {
    for (const auto& c : claims_)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::string text() const {
    std::string out;
    if (!title_.empty()) out += "# " + title_ + "\n";
    for (const auto& c : claims_) {
      out += (c.inconclusive ? "INCONCLUSIVE  " : c.passed ? "PASS  " : "FAIL  ") + c.name;
      if (!c.anchor.empty()) out += "  [" + c.anchor + "]";
      if (!c.detail.empty()) out += "  " + c.detail;
      out += "\n";
    }
    return out;
  }

 private:
  std::string title_;
  std::vector<Claim> claims_;
};

}  // namespace tafd
