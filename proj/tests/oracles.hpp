// Independent brute-force implementations used as oracles by the test
// suites. Everything here works on a flat (factor, exponent) letter-list
// representation with its own reduction code, deliberately separate from the
// library's syllable normal forms.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// factor orders: 0 = infinite (free generator), n >= 2 = finite cyclic-table factor
struct Group {
    std::vector<int> orders;

    using W = std::vector<std::pair<int, long>>;  // (factor, exponent/index)

    W reduce(W w) const {
        W out;
        for (auto [f, e] : w) {
            long v = e;
            if (orders[f] > 0) v = ((v % orders[f]) + orders[f]) % orders[f];
            if (v == 0) continue;
            if (!out.empty() && out.back().first == f) {
                long c = out.back().second + v;
                if (orders[f] > 0) c = ((c % orders[f]) + orders[f]) % orders[f];
                out.pop_back();
                if (c != 0) out.emplace_back(f, c);
            } else {
                out.emplace_back(f, v);
            }
        }
        // a cancellation can expose a new adjacent pair; iterate to a fixpoint
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < out.size(); ++i) {
                if (out[i].first != out[i + 1].first) continue;
                long c = out[i].second + out[i + 1].second;
                if (orders[out[i].first] > 0)
                    c = ((c % orders[out[i].first]) + orders[out[i].first]) % orders[out[i].first];
                W nw(out.begin(), out.begin() + i);
                if (c != 0) nw.emplace_back(out[i].first, c);
                nw.insert(nw.end(), out.begin() + i + 2, out.end());
                out = std::move(nw);
                changed = true;
                break;
            }
        }
        return out;
    }

    W mul(const W& a, const W& b) const {
        W c = a;
        c.insert(c.end(), b.begin(), b.end());
        return reduce(c);
    }

    W inv(const W& a) const {
        W out;
        for (auto it = a.rbegin(); it != a.rend(); ++it) out.emplace_back(it->first, -it->second);
        return reduce(out);
    }

    long xlen(const W& a) const {
        long n = 0;
        for (auto [f, e] : a) n += orders[f] > 0 ? 1 : std::labs(e);
        return n;
    }
};

// relative Cayley graph edges at budget (for the oracle graph): every free
// generator step and every H-letter with expansion within h_budget
struct RelGraph {
    Group g;
    std::vector<int> free_gens;              // factor ids with order 0
    std::vector<int> finite_factors;         // factor ids with order > 0
    Group::W relator;                        // cyclic family <W> (may be empty)
    int h_budget = 8;

    std::vector<Group::W> letters() const {
        std::vector<Group::W> out;
        for (int f : free_gens) {
            out.push_back(Group::W{{f, 1}});
            out.push_back(Group::W{{f, -1}});
        }
        for (int f : finite_factors)
            for (int v = 1; v < g.orders[f]; ++v) out.push_back(Group::W{{f, v}});
        if (!relator.empty()) {
            long wl = g.xlen(relator);
            for (long k = 1; wl * k <= h_budget; ++k) {
                Group::W p;
                for (long i = 0; i < k; ++i) p = g.mul(p, relator);
                out.push_back(p);
                out.push_back(g.inv(p));
            }
        }
        return out;
    }

    // BFS distance within the x-length ball
    std::map<Group::W, int> bfs(const Group::W& src, int radius) const {
        std::map<Group::W, int> dist;
        std::queue<Group::W> q;
        dist[src] = 0;
        q.push(src);
        auto ls = letters();
        while (!q.empty()) {
            Group::W u = q.front();
            q.pop();
            for (const auto& l : ls) {
                Group::W v = g.mul(u, l);
                if (g.xlen(v) > radius || dist.count(v)) continue;
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
        return dist;
    }

    // exhaustive enumeration of all geodesics as letter-index sequences
    std::vector<std::vector<int>> geodesics(const Group::W& from, const Group::W& to, int radius) const {
        auto dist = bfs(to, radius);
        auto it = dist.find(from);
        std::vector<std::vector<int>> out;
        if (it == dist.end()) return out;
        auto ls = letters();
        std::vector<int> cur;
        std::function<void(const Group::W&)> dfs = [&](const Group::W& v) {
            int dv = dist.at(v);
            if (dv == 0) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = 0; i < ls.size(); ++i) {
                Group::W nv = g.mul(v, ls[i]);
                if (g.xlen(nv) > radius) continue;
                auto jt = dist.find(nv);
                if (jt == dist.end() || jt->second != dv - 1) continue;
                cur.push_back(static_cast<int>(i));
                dfs(nv);
                cur.pop_back();
            }
        };
        dfs(from);
        return out;
    }

    // admissible-path distance d-hat for the cyclic family (free_cyclic) or a
    // finite factor (free_product): unidirectional BFS, depth-limited
    std::optional<int> dhat_cyclic(const Group::W& target, int depth_limit) const {
        auto in_H = [&](const Group::W& v) {
            if (v.empty()) return true;
            long wl = g.xlen(relator);
            if (g.xlen(v) % wl != 0) return false;
            long k = g.xlen(v) / wl;
            Group::W p;
            for (long i = 0; i < k; ++i) p = g.mul(p, relator);
            if (p == v) return true;
            return g.inv(p) == v;
        };
        auto ls = letters();
        std::vector<bool> is_h_letter(ls.size(), false);
        for (std::size_t i = 0; i < ls.size(); ++i) is_h_letter[i] = in_H(ls[i]) && !ls[i].empty();
        std::map<Group::W, int> dist;
        std::queue<Group::W> q;
        dist[Group::W{}] = 0;
        q.push(Group::W{});
        while (!q.empty()) {
            Group::W u = q.front();
            q.pop();
            if (dist[u] >= depth_limit) continue;
            for (std::size_t i = 0; i < ls.size(); ++i) {
                if (is_h_letter[i] && in_H(u)) continue;  // forbidden subgraph edge
                Group::W v = g.mul(u, ls[i]);
                if (dist.count(v)) continue;
                dist[v] = dist[u] + 1;
                if (v == target) return dist[v];
                q.push(v);
            }
        }
        auto it = dist.find(target);
        if (it != dist.end()) return it->second;
        return std::nullopt;
    }
};

inline RelGraph free_cyclic_oracle(int h_budget = 8) {
    RelGraph r;
    r.g.orders = {0, 0};
    r.free_gens = {0, 1};
    r.relator = {{0, 1}, {1, 1}};  // ab
    r.h_budget = h_budget;
    return r;
}

inline RelGraph free_product_oracle(int h_budget = 8) {
    RelGraph r;
    r.g.orders = {3, 5};
    r.finite_factors = {0, 1};
    r.h_budget = h_budget;
    return r;
}

// bounded brute force for tail equivalence
inline bool brute_tail_equivalent(const std::vector<std::uint64_t>& pre0, const std::vector<std::uint64_t>& per0,
                                  const std::vector<std::uint64_t>& pre1,
                                  const std::vector<std::uint64_t>& per1) {
    auto at = [](const std::vector<std::uint64_t>& pre, const std::vector<std::uint64_t>& per,
                 std::size_t i) { return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()]; };
    std::size_t bound0 = pre0.size() + 2 * per0.size();
    std::size_t bound1 = pre1.size() + 2 * per1.size();
    std::size_t horizon = 4 * per0.size() * per1.size() + std::max(pre0.size(), pre1.size()) + 8;
    for (std::size_t n = 0; n <= bound0; ++n)
        for (std::size_t m = 0; m <= bound1; ++m) {
            bool ok = true;
            for (std::size_t i = 0; i < horizon && ok; ++i)
                if (at(pre0, per0, n + i) != at(pre1, per1, m + i)) ok = false;
            if (ok) return true;
        }
    return false;
}

} // namespace oracle
