#pragma once

#include <string>
#include <vector>

#include "sepcoset/rays.hpp"
#include "sepcoset/separating.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

// A finite window of a bi-infinite geodesic between two ray directions: the
// central path from the minus-ray's depth-n vertex to the plus-ray's depth-n
// vertex, with its separating cosets in order.
struct BiInfiniteWindow {
    RayScheme minus;
    RayScheme plus;
    int n = 0;
    int D = 0;
    PathRec central;
    std::vector<SepCosetRecord> records;
};

// Builds the window; the join through the common base must be geodesic
// (checked from both ends), otherwise a reposition/widen error is thrown.
BiInfiniteWindow central_window(Workspace& ws, const RayScheme& minus, const RayScheme& plus, int n, int D);

enum class DichotomySide { toward_minus, toward_plus };

// For a coset B of the (xi,eta)-window and a third direction zeta, returns
// the side on which every enumerated central geodesic penetrates B.
// Requires D >= 6*C-hat.
DichotomySide dichotomy_check(Workspace& ws, const RayScheme& xi, const RayScheme& eta, const RayScheme& zeta,
                              const SepCosetRecord& B, int n, int D, const Ratio& c_hat);

// Splices a window path and a ray path that share a coset with gap > 3*C-hat:
// beta up to its entrance into B, the connecting H-edge, then alpha from its
// exit. The result is geodesic-verified across the window.
PathRec splice(Workspace& ws, const PathRec& beta, const PathRec& alpha, const CosetRef& B, int D,
               const Ratio& c_hat);

// Window form of the three-point decomposition: S(xi,eta) = S' u S'' u F with
// S' in S(xi,zeta), S'' in S(zeta,eta), |F| <= 4. Requires D >= 11*C-hat.
TripleSplit f4_split(Workspace& ws, const RayScheme& xi, const RayScheme& eta, const RayScheme& zeta, int n,
                     int D, const Ratio& c_hat);

} // namespace sepcoset
