#pragma once

#include <cstdint>
#include <string>

#include "sepcoset/budget.hpp"
#include "sepcoset/errors.hpp"

namespace sepcoset {

// A natural number extended by two flavours of infinity: "not found within
// this budget" and "infinite by the model's declared closed form". The
// distinction keeps essential-penetration tests from confusing truncation
// with a proof.
struct ExtNat {
    enum class Kind : std::uint8_t { finite, inf_at_budget, proven_inf };

    Kind kind = Kind::finite;
    std::uint32_t value = 0;
    std::int16_t budget_r = 0;  // recorded for inf_at_budget
    std::int16_t budget_l = 0;

    static ExtNat of(std::uint32_t v) { return ExtNat{Kind::finite, v, 0, 0}; }
    static ExtNat inf_at(const ExplorationBudget& b) {
        return ExtNat{Kind::inf_at_budget, 0, static_cast<std::int16_t>(b.x_radius),
                      static_cast<std::int16_t>(b.h_budget)};
    }
    static ExtNat proven_inf() { return ExtNat{Kind::proven_inf, 0, 0, 0}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_proven_inf() const { return kind == Kind::proven_inf; }
    bool is_inf_at_budget() const { return kind == Kind::inf_at_budget; }

    std::uint32_t finite_value() const {
        if (!is_finite()) throw partiality_error("value is not finite: " + str());
        return value;
    }

    // Values compare equal across budgets when both are the same kind of
    // infinity; finite values compare by value.
    friend bool operator==(const ExtNat& a, const ExtNat& b) {
        if (a.kind != b.kind) return false;
        return !a.is_finite() || a.value == b.value;
    }

    std::string str() const {
        switch (kind) {
            case Kind::finite: return std::to_string(value);
            case Kind::proven_inf: return "inf";
            case Kind::inf_at_budget:
                return "inf@R=" + std::to_string(budget_r) + ",L=" + std::to_string(budget_l);
        }
        return "?";
    }
};

// A metric value together with its stability certificate: stable means the
// value did not change when recomputed at the bumped budget.
struct DistValue {
    ExtNat d;
    bool stable = false;
};

} // namespace sepcoset
