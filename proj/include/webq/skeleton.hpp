#pragma once

#include <optional>
#include <string>
#include <vector>

#include "webq/braid.hpp"
#include "webq/operator_q.hpp"
#include "webq/webs.hpp"

namespace webq {

/// One graded term of a complex skeleton: a web-braid diagram with its
/// homological and quantum degree. No differentials are stored; the witness,
/// when present, is an intermediate coloring of the web with strictly
/// smaller color size than the boundary.
struct SkeletonTerm {
    LadderWeb web;
    long h = 0;
    long qdeg = 0;
    bool identityTag = false;
    std::optional<std::vector<int>> witness;
};

struct ComplexSkeleton {
    std::vector<int> top, bottom;
    std::vector<SkeletonTerm> terms;
};

struct MulticonePart {
    long hShift = 0;
    ComplexSkeleton skel;
};

struct MulticoneSpec {
    std::vector<MulticonePart> parts;
};

/// min(a,b)+1 ladder resolutions of one crossing on two strands.
ComplexSkeleton crossingSkeleton(int a, int b, int sign);

/// Full tensor expansion of a braid word along all its crossings.
ComplexSkeleton braidSkeleton(const BraidWord& b, const Coloring& gamma);

/// Union of the parts with term degrees shifted by the index grading.
ComplexSkeleton assembleMulticone(const MulticoneSpec& spec);

/// Alternating q-weighted sum of the term operators.
OperatorQ eulerOfSkeleton(const ComplexSkeleton& s, int N);

struct EliminationRecord {
    std::string kind;
    long letter = 0;              // 1-based letter position in the word at that step
    std::vector<long> params;
};

/// Cone presentation of a positive color-pure braid: the identity term at
/// h = 0 plus the accumulated summand complex X. Every X term has h >= 0 and
/// carries a witness coloring of strictly smaller color size; the recorded
/// eliminations name the trapezoid summands that a certificate removes.
struct ConePresentation {
    SkeletonTerm identityTerm;
    ComplexSkeleton X;
    std::vector<EliminationRecord> log;
};

ConePresentation simplifyColorPure(const BraidWord& b, const Coloring& gamma, long budget);

/// Multicone skeleton of a color-pure braid with mixed signs: a single
/// identity-tagged term at h = t^- (the sum of minimum colors over negative
/// crossings), all other terms carrying smaller-color-size witnesses.
ComplexSkeleton posnegSkeleton(const BraidWord& b, const Coloring& gamma, long budget);
inline ComplexSkeleton posnegSkeleton(const BraidWord& b, const Coloring& gamma) {
    return posnegSkeleton(b, gamma, 100000);
}

}  // namespace webq
