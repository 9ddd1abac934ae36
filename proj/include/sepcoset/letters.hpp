#pragma once

#include <compare>
#include <cstdint>

#include "sepcoset/word.hpp"

namespace sepcoset {

// Element of a subgroup family H_lambda, by code: for a finite factor the
// multiplication-table index (0 = identity), for a cyclic family <W> the
// exponent k (0 = identity). Letters never carry the identity; the identity
// code only appears as the marker returned by membership tests.
struct SubgroupElement {
    std::int32_t code = 0;

    bool is_identity() const { return code == 0; }
    friend auto operator<=>(const SubgroupElement&, const SubgroupElement&) = default;
};

// An edge label of the relative Cayley graph: either a free generator with a
// sign (X-letter) or a nontrivial subgroup element of one family (H-letter).
struct Letter {
    bool is_x = true;
    std::int32_t id = 0;   // generator id (X) or family id lambda (H)
    std::int32_t val = 0;  // sign +1/-1 (X) or subgroup element code != 0 (H)

    static Letter x(std::int32_t gen, std::int32_t sign) { return Letter{true, gen, sign}; }
    static Letter h(std::int32_t lam, std::int32_t code) { return Letter{false, lam, code}; }

    friend bool operator==(const Letter&, const Letter&) = default;
};

// Identity of a penetrated coset g*H_lambda. `rep` is the shortlex-minimal
// element of the coset, so equality of CosetRefs is equality of cosets.
struct CosetRef {
    std::int32_t lam = 0;
    Word rep;

    friend bool operator==(const CosetRef&, const CosetRef&) = default;
};

struct CosetRefHash {
    std::size_t operator()(const CosetRef& c) const noexcept {
        return WordHash{}(c.rep) * 31u + static_cast<std::size_t>(c.lam);
    }
};

} // namespace sepcoset
