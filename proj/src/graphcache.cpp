#include "sepcoset/graphcache.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "sepcoset/errors.hpp"

namespace sepcoset {

namespace {

// Letters that extend a normal form by exactly one expansion letter.
std::vector<Letter> extension_letters(const Model& m) {
    std::vector<Letter> out;
    for (int f = 0; f < m.num_finite_factors(); ++f)
        for (SubgroupElement h : m.h_enumerate(f, 1)) out.push_back(Letter::h(f, h.code));
    for (int g = 0; g < m.free_rank(); ++g) {
        out.push_back(Letter::x(g, +1));
        out.push_back(Letter::x(g, -1));
    }
    return out;
}

std::vector<Word> enumerate_ball(const Model& m, int radius) {
    std::vector<Word> verts{Word{}};
    std::unordered_map<Word, char, WordHash> seen;
    seen.emplace(Word{}, 1);
    std::vector<Letter> ext = extension_letters(m);
    std::size_t frontier_begin = 0;
    for (int layer = 1; layer <= radius; ++layer) {
        std::size_t frontier_end = verts.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const Letter& l : ext) {
                Word v = m.apply(verts[i], l);
                if (m.x_length(v) != layer) continue;
                if (seen.emplace(v, 1).second) verts.push_back(std::move(v));
            }
        }
        frontier_begin = frontier_end;
    }
    return verts;
}

} // namespace

GraphCache::GraphCache(const Model& m, ExplorationBudget b, std::vector<Word> verts)
    : model_(&m), budget_(b), verts_(std::move(verts)) {
    // shortlex sort via precomputed keys (length, letter tokens in alphabet order)
    std::vector<std::pair<std::vector<std::uint64_t>, std::size_t>> keys(verts_.size());
    std::vector<Letter> alpha_order;
    {
        // rank H-letters by the alphabet order so tokens sort correctly
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            std::vector<Letter> ls = m.word_letters(verts_[i]);
            std::vector<std::uint64_t> key;
            key.reserve(ls.size() + 1);
            key.push_back(ls.size());
            for (const Letter& l : ls) {
                std::uint64_t r;
                if (l.is_x) {
                    r = 2ull * static_cast<std::uint64_t>(l.id) + (l.val < 0 ? 1 : 0);
                } else {
                    // finite-factor letter rank: family then table index; the
                    // only H-letters inside normal forms are finite syllables
                    r = (1ull << 32) + (static_cast<std::uint64_t>(l.id) << 16) +
                        static_cast<std::uint64_t>(l.val);
                }
                key.push_back(r);
            }
            keys[i] = {std::move(key), i};
        }
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Word> sorted;
    sorted.reserve(verts_.size());
    for (auto& [k, i] : keys) sorted.push_back(std::move(verts_[i]));
    verts_ = std::move(sorted);
    verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
    idx_.reserve(verts_.size() * 2);
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i) idx_.emplace(verts_[i], i);
    auto it = idx_.find(Word{});
    id_one_ = it == idx_.end() ? -1 : it->second;
    build_adjacency();
    coset_ids_.assign(m.num_families(), {});
}

void GraphCache::build_adjacency() {
    const Model& m = *model_;
    std::vector<Letter> alphabet;
    for (int g = 0; g < m.free_rank(); ++g) {
        alphabet.push_back(Letter::x(g, +1));
        alphabet.push_back(Letter::x(g, -1));
    }
    for (int lam = 0; lam < m.num_families(); ++lam)
        for (SubgroupElement h : m.h_enumerate(lam, budget_.h_budget)) alphabet.push_back(Letter::h(lam, h.code));
    std::sort(alphabet.begin(), alphabet.end(),
              [&](const Letter& a, const Letter& b) { return m.letter_less(a, b); });

    offsets_.assign(verts_.size() + 1, 0);
    std::vector<Edge> tmp;
    tmp.reserve(alphabet.size());
    for (int v = 0; v < static_cast<int>(verts_.size()); ++v) {
        tmp.clear();
        for (const Letter& l : alphabet) {
            Word target = m.apply(verts_[v], l);
            int t = index(target);
            if (t >= 0) tmp.push_back(Edge{l, t});
        }
        offsets_[v + 1] = offsets_[v] + tmp.size();
        edges_.insert(edges_.end(), tmp.begin(), tmp.end());
    }
}

GraphCache GraphCache::ball(const Model& m, const ExplorationBudget& b) {
    return GraphCache(m, b, enumerate_ball(m, b.x_radius));
}

GraphCache GraphCache::tube(const Model& m, const ExplorationBudget& b, const std::vector<Word>& spine,
                            int width) {
    std::vector<Word> bw = enumerate_ball(m, width);
    std::vector<Word> verts;
    std::unordered_map<Word, char, WordHash> seen;
    verts.reserve(spine.size() * bw.size() / 4);
    for (const Word& s : spine)
        for (const Word& u : bw) {
            Word v = m.mul(s, u);
            if (seen.emplace(v, 1).second) verts.push_back(std::move(v));
        }
    return GraphCache(m, b, std::move(verts));
}

void GraphCache::bfs_into(int src, std::vector<std::int32_t>& dist) const {
    dist.assign(verts_.size(), -1);
    if (src < 0) return;
    std::vector<int> queue;
    queue.reserve(verts_.size());
    queue.push_back(src);
    dist[src] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        std::int32_t dv = dist[v];
        for (const Edge& e : edges(v)) {
            if (dist[e.to] == -1) {
                dist[e.to] = dv + 1;
                queue.push_back(e.to);
            }
        }
    }
}

std::vector<std::int32_t> GraphCache::bfs(int src) const {
    std::vector<std::int32_t> dist;
    bfs_into(src, dist);
    return dist;
}

std::shared_ptr<const std::vector<std::int32_t>> GraphCache::dist_from(int src) const {
    auto it = dist_memo_.find(src);
    if (it != dist_memo_.end()) return it->second;
    auto col = std::make_shared<std::vector<std::int32_t>>();
    bfs_into(src, *col);
    if (dist_memo_order_.size() >= 64) {
        dist_memo_.erase(dist_memo_order_.front());
        dist_memo_order_.erase(dist_memo_order_.begin());
    }
    dist_memo_order_.push_back(src);
    return dist_memo_.emplace(src, std::move(col)).first->second;
}

void GraphCache::seeded_bfs_into(const std::vector<std::pair<int, std::int32_t>>& seeds,
                                 std::vector<std::int32_t>& dist) const {
    dist.assign(verts_.size(), -1);
    // Dijkstra with lazy deletion: seeds carry arbitrary initial costs, so a
    // vertex is settled only when popped at the global minimum
    using Item = std::pair<std::int32_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto [v, c] : seeds)
        if (v >= 0) pq.emplace(c, v);
    while (!pq.empty()) {
        auto [c, v] = pq.top();
        pq.pop();
        if (dist[v] != -1) continue;
        dist[v] = c;
        for (const Edge& e : edges(v))
            if (dist[e.to] == -1) pq.emplace(c + 1, e.to);
    }
}

std::int32_t GraphCache::coset_id(int v, int lam) const {
    auto& col = coset_ids_[lam];
    if (col.empty()) {
        col.assign(verts_.size(), -1);
        for (int i = 0; i < static_cast<int>(verts_.size()); ++i) {
            CosetRef c = model_->coset_canonical(verts_[i], lam);
            auto [it, fresh] = coset_intern_.try_emplace(c, static_cast<std::int32_t>(coset_table_.size()));
            if (fresh) coset_table_.push_back(c);
            col[i] = it->second;
        }
    }
    return col[v];
}

std::int32_t GraphCache::coset_id_word(const Word& w, int lam) const {
    int v = index(w);
    if (v >= 0) {
        coset_id(0, lam);  // force the column
        return coset_ids_[lam][v];
    }
    CosetRef c = model_->coset_canonical(w, lam);
    auto [it, fresh] = coset_intern_.try_emplace(c, static_cast<std::int32_t>(coset_table_.size()));
    if (fresh) coset_table_.push_back(c);
    return it->second;
}

GeodesicEnum enumerate_geodesics(const GraphCache& gc, int f, int g, int cap,
                                 const std::vector<std::int32_t>* dist_g_pre) {
    GeodesicEnum out;
    std::vector<std::int32_t> dist_g_own;
    if (!dist_g_pre) {
        gc.bfs_into(g, dist_g_own);
        dist_g_pre = &dist_g_own;
    }
    const std::vector<std::int32_t>& dist_g = *dist_g_pre;
    if (dist_g[f] < 0) return out;
    std::vector<Letter> stack;
    // iterative DFS over distance-decreasing edges, in adjacency (= alphabet) order
    struct Frame {
        int v;
        std::size_t next = 0;
    };
    std::vector<Frame> frames{{f, 0}};
    while (!frames.empty()) {
        if (frames.back().v == g) {
            if (static_cast<int>(out.labels.size()) >= cap) {
                out.overflow = true;
                return out;
            }
            out.labels.push_back(stack);
            frames.pop_back();
            if (!stack.empty()) stack.pop_back();
            continue;
        }
        int v = frames.back().v;
        auto es = gc.edges(v);
        bool descended = false;
        while (frames.back().next < es.size()) {
            const GraphCache::Edge& e = es[frames.back().next++];
            if (dist_g[e.to] == dist_g[v] - 1) {
                stack.push_back(e.lab);
                frames.push_back(Frame{e.to, 0});
                descended = true;
                break;
            }
        }
        if (!descended) {
            frames.pop_back();
            if (!stack.empty()) stack.pop_back();
        }
    }
    return out;
}

bool exists_geodesic_avoiding(const GraphCache& gc, int f, int g, int lam, std::int32_t coset) {
    std::vector<std::int32_t> dist_g = gc.bfs(g);
    if (dist_g[f] < 0) throw partiality_error("exists_geodesic_avoiding: endpoints not connected in cache");
    // DFS with memo over vertices: from v (on some geodesic), can we finish
    // without using an H_lam edge that starts inside the coset?
    std::vector<char> memo(gc.size(), 0);  // 0 unknown, 1 yes, 2 no
    struct Frame {
        int v;
        std::size_t next = 0;
        bool any = false;
    };
    std::vector<Frame> frames{{f, 0, false}};
    while (!frames.empty()) {
        int v = frames.back().v;
        if (v == g) {
            memo[v] = 1;
            frames.pop_back();
            if (!frames.empty()) frames.back().any = true;
            continue;
        }
        auto es = gc.edges(v);
        bool descended = false;
        while (frames.back().next < es.size()) {
            const GraphCache::Edge& e = es[frames.back().next++];
            if (dist_g[e.to] != dist_g[v] - 1) continue;
            if (!e.lab.is_x && e.lab.id == lam && gc.coset_id(v, lam) == coset) continue;
            if (memo[e.to] == 1) {
                frames.back().any = true;
                continue;
            }
            if (memo[e.to] == 2) continue;
            frames.push_back(Frame{e.to, 0, false});
            descended = true;
            break;
        }
        if (descended) continue;
        memo[v] = frames.back().any ? 1 : 2;
        bool ok = frames.back().any;
        frames.pop_back();
        if (ok && !frames.empty()) frames.back().any = true;
    }
    return memo[f] == 1;
}

} // namespace sepcoset
