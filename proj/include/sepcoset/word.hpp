#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace sepcoset {

// One syllable of a normal form. `factor` indexes the model's factor list:
// finite factors first, then free generators. For a finite factor, `value` is
// a nonzero index into its multiplication table; for a free generator, a
// nonzero exponent.
struct Syllable {
    std::int32_t factor = 0;
    std::int32_t value = 0;

    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// A group element in normal form: alternating syllables (adjacent factors
// differ, no identity syllable). The empty word is the identity. Equality of
// group elements is structural equality of words.
using Word = std::vector<Syllable>;

inline bool is_identity(const Word& w) { return w.empty(); }

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (const Syllable& s : w) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.factor));
            h *= 1099511628211ull;
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.value));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace sepcoset
