#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "sepcoset/budget.hpp"
#include "sepcoset/letters.hpp"
#include "sepcoset/model.hpp"

namespace sepcoset {

// A finite exploration window of the relative Cayley graph: an interned
// vertex set with the induced adjacency. Vertices are indexed in shortlex
// order, adjacency lists in alphabet order, so everything downstream is
// deterministic. Two window shapes are used: the X-length ball around 1 and
// a tube around a given vertex spine (for rays, whose endpoints leave any
// ball centred at 1).
class GraphCache {
public:
    struct Edge {
        Letter lab;
        std::int32_t to;
    };

    static GraphCache ball(const Model& m, const ExplorationBudget& b);
    static GraphCache tube(const Model& m, const ExplorationBudget& b, const std::vector<Word>& spine,
                           int width);

    const Model& model() const { return *model_; }
    const ExplorationBudget& budget() const { return budget_; }

    int size() const { return static_cast<int>(verts_.size()); }
    const Word& word(int i) const { return verts_[static_cast<std::size_t>(i)]; }
    int index(const Word& w) const {
        auto it = idx_.find(w);
        return it == idx_.end() ? -1 : it->second;
    }
    bool contains(const Word& w) const { return idx_.count(w) != 0; }
    int id_one() const { return id_one_; }

    std::span<const Edge> edges(int v) const {
        return {edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    std::size_t edge_count() const { return edges_.size(); }

    // Unit-weight BFS in the induced subgraph; -1 marks unreachable vertices.
    void bfs_into(int src, std::vector<std::int32_t>& dist) const;
    std::vector<std::int32_t> bfs(int src) const;
    // memoized BFS column (bounded cache, FIFO eviction)
    std::shared_ptr<const std::vector<std::int32_t>> dist_from(int src) const;
    // BFS from several seeds with given initial costs (still unit weights).
    void seeded_bfs_into(const std::vector<std::pair<int, std::int32_t>>& seeds,
                         std::vector<std::int32_t>& dist) const;

    // Canonical coset id of vertex v for family lam; ids are dense per cache
    // and stable across calls. The representing CosetRef is coset_of(id).
    std::int32_t coset_id(int v, int lam) const;
    const CosetRef& coset_of(std::int32_t id) const { return coset_table_[id]; }
    // coset id of an arbitrary word (interned on demand)
    std::int32_t coset_id_word(const Word& w, int lam) const;

private:
    GraphCache(const Model& m, ExplorationBudget b, std::vector<Word> verts);
    void build_adjacency();

    const Model* model_;
    ExplorationBudget budget_;
    std::vector<Word> verts_;
    std::unordered_map<Word, int, WordHash> idx_;
    std::vector<std::size_t> offsets_;
    std::vector<Edge> edges_;
    int id_one_ = -1;

    // lazy per-family coset labelling
    mutable std::vector<std::vector<std::int32_t>> coset_ids_;   // [lam][v]
    mutable std::vector<CosetRef> coset_table_;
    mutable std::unordered_map<CosetRef, std::int32_t, CosetRefHash> coset_intern_;

    // bounded memo of BFS columns
    mutable std::unordered_map<int, std::shared_ptr<const std::vector<std::int32_t>>> dist_memo_;
    mutable std::vector<int> dist_memo_order_;
};

// All label sequences of geodesics from f to g inside the cache, in
// lexicographic (= shortlex) order, truncated at `cap` with an overflow flag.
// `dist_g` may carry a precomputed BFS from g.
struct GeodesicEnum {
    std::vector<std::vector<Letter>> labels;
    bool overflow = false;
};
GeodesicEnum enumerate_geodesics(const GraphCache& gc, int f, int g, int cap,
                                 const std::vector<std::int32_t>* dist_g = nullptr);

// True iff some geodesic from f to g avoids penetrating the coset with the
// given id (edges counted as penetrations are H-edges of family lam whose
// source lies in the coset).
bool exists_geodesic_avoiding(const GraphCache& gc, int f, int g, int lam, std::int32_t coset);

} // namespace sepcoset
