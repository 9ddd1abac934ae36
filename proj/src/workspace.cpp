#include "sepcoset/workspace.hpp"

#include <fstream>
#include <sstream>

#include "sepcoset/errors.hpp"

namespace sepcoset {

Workspace::Workspace(GroupModelSpec spec, ExplorationBudget budget, std::uint64_t seed)
    : model_(std::move(spec)), budget_(budget), seed_(seed) {
    if (budget_.x_radius < 0 || budget_.h_budget < 0 || budget_.geodesic_cap <= 0)
        throw input_error("invalid exploration budget " + budget_.str());
}

const GraphCache& Workspace::base() {
    if (!base_) base_.emplace(GraphCache::ball(model_, budget_));
    return *base_;
}

const GraphCache& Workspace::bumped() {
    if (!bumped_) bumped_.emplace(GraphCache::ball(model_, budget_.bumped()));
    return *bumped_;
}

std::uint64_t Workspace::stream_seed(std::uint64_t task_id) const {
    // splitmix64 step over (seed, task)
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (task_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

AdmissibleResult Workspace::dhat_at(int lam, const Word& h, int h_budget, int depth_need) {
    DhatKey key{lam, h, h_budget};
    auto it = dhat_memo_.find(key);
    if (it != dhat_memo_.end()) {
        const DhatEntry& e = it->second;
        if (e.res.d.is_finite() || e.depth_used >= depth_need) return e.res;
    }
    AdmissibleResult res = admissible_distance(model_, lam, h, h_budget, depth_need, dhat_node_cap);
    dhat_memo_[key] = DhatEntry{res, depth_need};
    return res;
}

AdmissibleResult Workspace::dhat(int lam, const Word& f, const Word& g, int depth_need) {
    Word h = model_.mul(model_.inv(f), g);
    auto mem = model_.subgroup_membership(h, lam);
    if (!mem) return {ExtNat::proven_inf(), 0};
    if (mem->is_identity()) return {ExtNat::of(0), 0};
    if (model_.declared_infinite_relative_metric()) return {ExtNat::proven_inf(), 0};
    return dhat_at(lam, h, budget_.h_budget, depth_need);
}

DistValue Workspace::dhat_stable(int lam, const Word& f, const Word& g, int depth_need) {
    AdmissibleResult a = dhat(lam, f, g, depth_need);
    if (a.d.is_proven_inf()) return {a.d, true};
    Word h = model_.mul(model_.inv(f), g);
    AdmissibleResult b = dhat_at(lam, h, budget_.h_budget + 2, depth_need);
    return {a.d, a.d == b.d};
}

bool Workspace::gap_exceeds(int lam, const Word& entry, const Word& exit, int D) {
    AdmissibleResult r = dhat(lam, entry, exit, D + 1);
    if (r.d.is_proven_inf()) return true;
    if (r.d.is_finite()) return static_cast<int>(r.d.value) > D;
    if (r.certified_lower >= D + 1) return true;  // > D certified at this budget
    throw partiality_error("relative metric undecided vs D=" + std::to_string(D) +
                           " at budget " + budget_.str() + " (certified >= " +
                           std::to_string(r.certified_lower) + ")");
}

ExtNat Workspace::gap_value(int lam, const Word& entry, const Word& exit, int D) {
    AdmissibleResult r = dhat(lam, entry, exit, std::max(D + 1, dhat_value_depth));
    return r.d;
}

void Workspace::load_dhat_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;  // absent cache is fine
    std::string header;
    if (!std::getline(in, header)) return;
    if (header != "sepcoset-cache/1 " + model_.signature()) return;  // stale, ignore
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        int lam, h_budget, depth, certified;
        std::string word, val;
        if (!(ss >> lam >> h_budget >> depth >> word >> val >> certified)) continue;
        Word h;
        try {
            h = model_.parse_word(word);
        } catch (const input_error&) {
            continue;
        }
        AdmissibleResult res;
        res.certified_lower = certified;
        if (val == "inf")
            res.d = ExtNat::inf_at(ExplorationBudget{0, h_budget, 0});
        else
            res.d = ExtNat::of(static_cast<std::uint32_t>(std::stoul(val)));
        dhat_memo_[DhatKey{lam, h, h_budget}] = DhatEntry{res, depth};
    }
}

void Workspace::save_dhat_cache(const std::string& path) const {
    std::ofstream out(path);
    if (!out) return;
    out << "sepcoset-cache/1 " << model_.signature() << "\n";
    // deterministic order
    std::vector<std::string> lines;
    for (const auto& [key, entry] : dhat_memo_) {
        std::string val = entry.res.d.is_finite() ? std::to_string(entry.res.d.value) : "inf";
        lines.push_back(std::to_string(key.lam) + " " + std::to_string(key.h_budget) + " " +
                        std::to_string(entry.depth_used) + " " + model_.word_str(key.h) + " " + val + " " +
                        std::to_string(entry.res.certified_lower));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out << l << "\n";
}

} // namespace sepcoset
