#ifndef DIGITOP_CHECK_HPP
#define DIGITOP_CHECK_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace digitop {

// Outcome of a verifier. On failure, `clause` names the first violated
// condition in canonical scan order, so reports are reproducible.
struct CheckResult {
  bool ok = false;
  std::string clause;

  static CheckResult pass() { return {true, {}}; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }

  explicit operator bool() const { return ok; }
};

// Thrown when a search or oracle exceeds its configured cap. Distinct from
// a NotWithinBudget verdict: the verdict is a certified exhaustive statement,
// this exception means the statement could not be completed.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace digitop

#endif
