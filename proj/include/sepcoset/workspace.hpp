#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sepcoset/budget.hpp"
#include "sepcoset/extnat.hpp"
#include "sepcoset/graphcache.hpp"
#include "sepcoset/model.hpp"
#include "sepcoset/relmetric.hpp"

namespace sepcoset {

// Shared context for one model + budget: the ball caches at the base and
// bumped budgets and the memo tables every module reads through. All values
// derived here are deterministic functions of (model spec, budget, seed).
class Workspace {
public:
    Workspace(GroupModelSpec spec, ExplorationBudget budget, std::uint64_t seed = 0);

    const Model& model() const { return model_; }
    const ExplorationBudget& budget() const { return budget_; }
    std::uint64_t seed() const { return seed_; }

    const GraphCache& base();    // ball at the configured budget
    const GraphCache& bumped();  // ball at budget+2, for stability certificates

    // --- relative metric -------------------------------------------------
    // d-hat_lam(f,g), normalized to d-hat_lam(1, f^-1 g); memoized per
    // (lam, h, budget). depth_need is the resolution the caller requires.
    AdmissibleResult dhat(int lam, const Word& f, const Word& g, int depth_need);
    DistValue dhat_stable(int lam, const Word& f, const Word& g, int depth_need);
    // Decides d-hat(entry,exit) > D at this budget; throws partiality_error
    // when the budget cannot certify either direction.
    bool gap_exceeds(int lam, const Word& entry, const Word& exit, int D);
    // The gap value for records: exact when small, proven_inf when declared.
    ExtNat gap_value(int lam, const Word& entry, const Word& exit, int D);

    // per-task RNG stream derived from the workspace seed
    std::uint64_t stream_seed(std::uint64_t task_id) const;

    // Optional relative-metric memo persistence. The cache only replays
    // deterministic computations, so deleting it never changes a report.
    void load_dhat_cache(const std::string& path);
    void save_dhat_cache(const std::string& path) const;

    std::size_t dhat_node_cap = 6'000'000;
    int dhat_value_depth = 16;  // how hard gap_value tries to resolve exact gaps

    // per-module memo slots (e.g. Y-graph state per D), managed by the modules
    std::map<std::string, std::shared_ptr<void>> module_memo;

private:
    Model model_;
    ExplorationBudget budget_;
    std::uint64_t seed_;
    std::optional<GraphCache> base_;
    std::optional<GraphCache> bumped_;

    struct DhatKey {
        int lam;
        Word h;
        int h_budget;
        bool operator==(const DhatKey&) const = default;
    };
    struct DhatKeyHash {
        std::size_t operator()(const DhatKey& k) const noexcept {
            return WordHash{}(k.h) ^ (static_cast<std::size_t>(k.lam) << 1) ^
                   (static_cast<std::size_t>(k.h_budget) << 8);
        }
    };
    struct DhatEntry {
        AdmissibleResult res;
        int depth_used = 0;
    };
    std::unordered_map<DhatKey, DhatEntry, DhatKeyHash> dhat_memo_;

    AdmissibleResult dhat_at(int lam, const Word& h, int h_budget, int depth_need);
};

} // namespace sepcoset
