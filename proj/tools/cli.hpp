#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace natdual::cli {

// Exit codes: 0 verified, 2 counterexample or falsified check, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCounterexample = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerbOwnership {
  std::string verb;
  std::vector<std::string> operations;
};

// Engine operations reached by each verb; every operation has one owner.
const std::vector<VerbOwnership>& verb_ownership();

}  // namespace natdual::cli
