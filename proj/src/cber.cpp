#include "sepcoset/cber.hpp"

#include <algorithm>

#include "sepcoset/errors.hpp"

namespace sepcoset {

namespace {

// smallest p dividing n with per = (first p tokens)^(n/p)
std::size_t primitive_root_len(const std::vector<std::uint64_t>& per) {
    const std::size_t n = per.size();
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i)
            if (per[i] != per[i - p]) ok = false;
        if (ok) return p;
    }
    return n;
}

} // namespace

EvPeriodicSeq EvPeriodicSeq::canonical(std::vector<std::uint64_t> pre, std::vector<std::uint64_t> per) {
    if (per.empty()) throw input_error("EvPeriodicSeq: period must be nonempty");
    per.resize(primitive_root_len(per));
    // absorb preperiod tokens that already follow the periodic pattern
    while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        std::rotate(per.begin(), per.end() - 1, per.end());
    }
    EvPeriodicSeq s;
    s.preperiod = std::move(pre);
    s.period = std::move(per);
    return s;
}

EvPeriodicSeq EvPeriodicSeq::parse(const std::string& text) {
    auto section = [&](const std::string& name) -> std::vector<std::uint64_t> {
        auto pos = text.find(name + "=[");
        if (pos == std::string::npos) throw input_error("sequence: missing " + name + "=[..] in " + text);
        pos += name.size() + 2;
        auto end = text.find(']', pos);
        if (end == std::string::npos) throw input_error("sequence: unbalanced [ in " + text);
        std::vector<std::uint64_t> out;
        std::string body = text.substr(pos, end - pos);
        std::size_t i = 0;
        while (i < body.size()) {
            auto comma = body.find(',', i);
            std::string item = body.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
            auto a = item.find_first_not_of(" \t");
            if (a != std::string::npos) out.push_back(std::stoull(item.substr(a)));
            if (comma == std::string::npos) break;
            i = comma + 1;
        }
        return out;
    };
    return canonical(section("pre"), section("per"));
}

std::string EvPeriodicSeq::str() const {
    std::string s = "pre=[";
    for (std::size_t i = 0; i < preperiod.size(); ++i)
        s += (i ? "," : "") + std::to_string(preperiod[i]);
    s += "];per=[";
    for (std::size_t i = 0; i < period.size(); ++i) s += (i ? "," : "") + std::to_string(period[i]);
    return s + "]";
}

std::pair<bool, std::optional<TailWitness>> tail_equivalent(const EvPeriodicSeq& w0, const EvPeriodicSeq& w1) {
    if (w0.period.size() != w1.period.size()) return {false, std::nullopt};
    const std::size_t p = w0.period.size();
    // find the rotation r with w1.period = rot_r(w0.period), i.e.
    // w1.period[i] = w0.period[(i + r) mod p]
    for (std::size_t r = 0; r < p; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < p && ok; ++i)
            if (w1.period[i] != w0.period[(i + r) % p]) ok = false;
        if (!ok) continue;
        // dropping |pre0| from w0 leaves period^inf; dropping |pre1| + (p - r) mod p
        // from w1 leaves the same rotation of it
        TailWitness w;
        w.n = w0.preperiod.size();
        w.m = w1.preperiod.size() + (p - r) % p;
        return {true, w};
    }
    return {false, std::nullopt};
}

TailCheckVerdict phi_pair_tailcheck(Workspace& ws, const RayScheme& s1, const RayScheme& s2, const Word& g,
                                    int D, int depth) {
    const Model& m = ws.model();
    TailCheckVerdict out;
    out.verdict = "inconclusive";

    // translation check: g * (vertices of s1) must eventually coincide with
    // the vertices of s2 under a shift
    std::vector<Word> v1 = ray_vertices(m, s1, depth);
    std::vector<Word> v2 = ray_vertices(m, s2, depth);
    for (Word& w : v1) w = m.mul(g, w);
    const int period = static_cast<int>(std::max(s1.period.size(), s2.period.size()));
    int shift_window = 2 * period + static_cast<int>(std::max(s1.prefix.size(), s2.prefix.size()));
    for (int i = 0; i <= shift_window && !out.translation_verified; ++i)
        for (int j = 0; j <= shift_window && !out.translation_verified; ++j) {
            int steps = 0;
            bool ok = true;
            for (int t = 0; i + t < static_cast<int>(v1.size()) && j + t < static_cast<int>(v2.size());
                 ++t, ++steps)
                if (v1[i + t] != v2[j + t]) {
                    ok = false;
                    break;
                }
            if (ok && steps > 2 * period) out.translation_verified = true;
        }

    PhiPrefix p1 = phi_prefix_ray(ws, s1, depth, D);
    PhiPrefix p2 = phi_prefix_ray(ws, s2, depth, D);
    int need = 2 * static_cast<int>(std::max(s1.period.size(), s2.period.size()));
    if (p1.certified_len < need || p2.certified_len < need) return out;  // inconclusive

    // align at a common separating coset: entrances pin positions m_i in the labels
    std::vector<SepCosetRecord> r1 = ray_sep_cosets(ws, s1, depth, D);
    std::vector<SepCosetRecord> r2 = ray_sep_cosets(ws, s2, depth, D);
    int a1 = -1, a2 = -1;
    for (const auto& ra : r1) {
        for (const auto& rb : r2)
            if (ra.coset == rb.coset && ra.dist_from_f < p1.certified_len &&
                rb.dist_from_f < p2.certified_len) {
                a1 = ra.dist_from_f;
                a2 = rb.dist_from_f;
                break;
            }
        if (a1 >= 0) break;
    }
    if (a1 < 0) {
        // no common coset in the certified windows: compare periods directly --
        // distinct period cosets certify disagreement of the tails
        bool any_common = false;
        for (const auto& ra : r1)
            for (const auto& rb : r2)
                if (ra.coset == rb.coset) any_common = true;
        if (!any_common && !r1.empty() && !r2.empty()) {
            out.verdict = "tail-disagree";
            out.window = static_cast<int>(std::min(r1.size(), r2.size()));
        }
        return out;
    }

    out.offset0 = a1;
    out.offset1 = a2;
    int window = std::min(p1.certified_len - a1, p2.certified_len - a2);
    out.window = window;
    for (int t = 0; t < window; ++t) {
        if (m.letter_token(p1.labels[a1 + t]) != m.letter_token(p2.labels[a2 + t])) {
            out.verdict = "tail-disagree";
            return out;
        }
    }
    out.verdict = window >= need ? "tail-agree" : "inconclusive";
    return out;
}

} // namespace sepcoset
