#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepcoset/rays.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

// An eventually periodic sequence over opaque tokens, in canonical form:
// primitive period, minimal preperiod.
struct EvPeriodicSeq {
    std::vector<std::uint64_t> preperiod;
    std::vector<std::uint64_t> period;  // nonempty

    std::uint64_t at(std::size_t i) const {
        if (i < preperiod.size()) return preperiod[i];
        return period[(i - preperiod.size()) % period.size()];
    }
    static EvPeriodicSeq canonical(std::vector<std::uint64_t> pre, std::vector<std::uint64_t> per);
    static EvPeriodicSeq parse(const std::string& text);  // pre=[..];per=[..]
    std::string str() const;
};

struct TailWitness {
    std::size_t n = 0;  // tokens dropped from w0
    std::size_t m = 0;  // tokens dropped from w1
};

// Decision procedure for the tail equivalence: true iff the primitive periods
// are rotations of each other and the rotation aligns the eventual tails.
std::pair<bool, std::optional<TailWitness>> tail_equivalent(const EvPeriodicSeq& w0, const EvPeriodicSeq& w1);

// Verdict of comparing two certified Phi-prefixes after aligning at a common
// separating coset. Never claims more than the certified windows support.
struct TailCheckVerdict {
    std::string verdict;  // "tail-agree" | "tail-disagree" | "inconclusive"
    int window = 0;       // compared token count
    int offset0 = 0;      // alignment offsets into the two prefixes
    int offset1 = 0;
    bool translation_verified = false;
};

TailCheckVerdict phi_pair_tailcheck(Workspace& ws, const RayScheme& s1, const RayScheme& s2, const Word& g,
                                    int D, int depth);

} // namespace sepcoset
