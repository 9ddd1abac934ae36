#include "sepcoset/relmetric.hpp"

#include <limits>
#include <unordered_map>
#include <vector>

namespace sepcoset {

namespace {

struct Side {
    std::unordered_map<Word, std::int32_t, WordHash> dist;
    std::vector<Word> frontier;
    int depth = 0;
};

} // namespace

// Correctness of the certificates: after both sides are complete to depths
// fd and bd, every admissible path of length T <= fd+bd has a vertex v with
// dist_fwd(v) <= fd and dist_bwd(v) <= bd, so it was detected as a meet and
// best <= T. Hence best, once <= fd+bd, is exact, and if nothing was found,
// every path has length >= fd+bd+1.
AdmissibleResult admissible_distance(const Model& m, int lam, const Word& h, int h_budget,
                                     int depth_limit, std::size_t node_cap) {
    const ExplorationBudget tag{0, h_budget, 0};
    if (is_identity(h)) return {ExtNat::of(0), 0};

    std::vector<Letter> alphabet;
    for (int g = 0; g < m.free_rank(); ++g) {
        alphabet.push_back(Letter::x(g, +1));
        alphabet.push_back(Letter::x(g, -1));
    }
    for (int fam = 0; fam < m.num_families(); ++fam)
        for (SubgroupElement s : m.h_enumerate(fam, h_budget)) alphabet.push_back(Letter::h(fam, s.code));

    // an edge u -> u*l is forbidden iff l is an H_lam letter and u lies in H_lam
    auto forbidden = [&](const Word& src, const Letter& l) {
        if (l.is_x || l.id != lam) return false;
        return m.subgroup_membership(src, lam).has_value();
    };

    Side fwd, bwd;
    fwd.dist.emplace(Word{}, 0);
    fwd.frontier.push_back(Word{});
    bwd.dist.emplace(h, 0);
    bwd.frontier.push_back(h);

    int best = -1;
    auto try_meet = [&](const Word& v, int dv, const Side& other) {
        auto it = other.dist.find(v);
        if (it == other.dist.end()) return;
        int total = dv + it->second;
        if (best < 0 || total < best) best = total;
    };

    std::size_t nodes = 2;
    bool truncated = false;
    bool exhausted = false;
    while (true) {
        if (best >= 0 && best <= fwd.depth + bwd.depth) {
            return {ExtNat::of(static_cast<std::uint32_t>(best)), best};
        }
        if (best < 0 && fwd.depth + bwd.depth + 1 > depth_limit) break;
        if (fwd.frontier.empty() && bwd.frontier.empty()) {
            exhausted = true;
            break;
        }
        if (truncated) break;

        const bool use_fwd =
            !fwd.frontier.empty() && (bwd.frontier.empty() || fwd.frontier.size() <= bwd.frontier.size());
        Side& side = use_fwd ? fwd : bwd;
        Side& other = use_fwd ? bwd : fwd;
        std::vector<Word> next;
        for (const Word& u : side.frontier) {
            for (const Letter& l : alphabet) {
                Word v;
                if (use_fwd) {
                    if (forbidden(u, l)) continue;
                    v = m.apply(u, l);
                } else {
                    // predecessor of u via letter l: the edge v -> u must be admissible
                    v = m.mul(u, m.inv(m.letter_word(l)));
                    if (forbidden(v, l)) continue;
                }
                auto [it, fresh] = side.dist.emplace(v, side.depth + 1);
                if (!fresh) continue;
                if (++nodes > node_cap) {
                    truncated = true;
                    side.dist.erase(it);
                    break;
                }
                try_meet(it->first, side.depth + 1, other);
                next.push_back(it->first);
            }
            if (truncated) break;
        }
        if (truncated) break;  // the interrupted layer proves nothing extra
        side.frontier = std::move(next);
        side.depth += 1;
    }

    if (best >= 0 && best <= fwd.depth + bwd.depth)
        return {ExtNat::of(static_cast<std::uint32_t>(best)), best};

    int proven;
    if (exhausted && best < 0) {
        // unreachable with this letter set at any depth
        proven = std::numeric_limits<int>::max() / 2;
    } else {
        proven = fwd.depth + bwd.depth + 1;
        if (best >= 0 && best < proven) proven = best;
    }
    return {ExtNat::inf_at(tag), proven};
}

} // namespace sepcoset
