#pragma once

#include <vector>

#include "sepcoset/relgraph.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

// Exact nonnegative rational, used for the sampled constant estimates.
struct Ratio {
    long long num = 0;
    long long den = 1;
    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
    // a/b < c/d for nonnegative rationals
    friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
};

// One coset of S(f,g;D): the coset, entrance/exit of a witnessing geodesic,
// the relative-metric gap between them, and the position in the order by
// distance from f.
struct SepCosetRecord {
    CosetRef coset;
    Word entry;
    Word exit;
    ExtNat gap;
    int position = 0;
    int dist_from_f = 0;
};

// All (f,g;D)-separating cosets, ordered by distance from f. A coset is
// included iff some geodesic from f to g in the budgeted graph penetrates it
// with a certified gap > D; witnesses are chosen deterministically.
std::vector<SepCosetRecord> sep_cosets(Workspace& ws, const Word& f, const Word& g, int D);

// The essential penetrations of one geodesic-flagged path, in traversal order.
std::vector<SepCosetRecord> essential_penetrations(Workspace& ws, const PathRec& p, int D);

struct TripleSplit {
    std::vector<SepCosetRecord> s_fz;    // prefix, contained in S(f,z;D)
    std::vector<SepCosetRecord> s_zg;    // suffix, contained in S(z,g;D)
    std::vector<SepCosetRecord> window;  // the leftover F, |F| <= 4
};

// Partition of S(f,g;D) relative to a third point z. Requires D >= 11*C-hat;
// a window larger than 4 is a theorem violation (or an underestimated C-hat).
TripleSplit triple_split(Workspace& ws, const Word& f, const Word& g, const Word& z, int D,
                         const Ratio& c_hat);

} // namespace sepcoset
