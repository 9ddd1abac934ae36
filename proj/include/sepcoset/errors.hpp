#pragma once

#include <stdexcept>
#include <string>

namespace sepcoset {

// Exit-code triage used by the CLI:
//   0 pass, 1 theorem violation, 2 usage/input error, 3 inconclusive (budget).

struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A finitely checkable statement failed on a concrete instance. Carries a
// replayable description of the instance.
struct theorem_violation : std::runtime_error {
    explicit theorem_violation(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested value cannot be certified at the current budget.
struct partiality_error : std::runtime_error {
    explicit partiality_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration window provably too small; caller should widen and retry.
struct widen_window_error : partiality_error {
    explicit widen_window_error(const std::string& msg) : partiality_error(msg) {}
};

enum class ExitCode : int {
    pass = 0,
    violation = 1,
    usage = 2,
    inconclusive = 3,
};

} // namespace sepcoset
