#pragma once

#include <optional>
#include <string>
#include <vector>

#include "webq/braid.hpp"
#include "webq/operator_q.hpp"
#include "webq/webs.hpp"

namespace webq {

struct InverseSystemSpec {
    InfiniteBraidWord word;
    Coloring gamma;
    enum class Kind { MaximalPurity, Subsequence } kind = Kind::MaximalPurity;
    std::vector<long> subsequence;  // used when kind == Subsequence

    /// Truncation lengths m_1 < m_2 < ... (validated against the maximal
    /// purity sequence when a subsequence is supplied).
    std::vector<long> sequence(long count) const;
};

std::vector<BraidWord> truncations(const InverseSystemSpec& spec, long count);

/// Presentation of a truncation as full twists interleaved with the
/// certificate's insertion blocks. `gaps` lists, per insertion, its position
/// on the surviving-twist-letter timeline; z counts complete twists.
struct TwistDecomposition {
    int n = 0;
    long twistLetters = 0;
    long z = 0;
    std::vector<long> gaps;
    std::vector<long> insertionLengths;
};

TwistDecomposition deriveDecomposition(const InfiniteBraidWord& w, const Coloring& gamma,
                                       const CompletenessCertificate& cert, long m);

/// min over identity/non-identity assignments to the insertion blocks of
/// (#non-identity) + 2 * (longest run of complete twists uninterrupted by a
/// non-identity insertion). Dynamic programming over the blocks.
long boundB(const TwistDecomposition& d);

/// Brute-force enumeration of the same minimum; test oracle for boundB.
long boundBExhaustive(const TwistDecomposition& d);

struct StabStep {
    long ell = 0;
    long m = 0;
    std::optional<long> z, b;
    std::optional<long> qdiffPrev, qdiffFt;  // nullopt = operators equal
    std::string digest;
};

struct StabReport {
    std::vector<StabStep> steps;
    std::string verdict;
    std::vector<std::string> notes;
};

struct StabOptions {
    long precision = 20;        // q-adic window M
    uint64_t dimLimit = 20000;  // state-space ceiling
};

/// Per-step bound b(ell) along the purity sequence, with the growth verdict.
StabReport cauchyCertificate(const InverseSystemSpec& spec, const CompletenessCertificate& cert,
                             long count);

/// Euler operators of the truncations of B, compared consecutively and
/// against the reference system A at matched twist count.
StabReport stabilize(const InverseSystemSpec& specA, const InverseSystemSpec& specB, int N,
                     long steps, const StabOptions& opt,
                     const std::optional<CompletenessCertificate>& certA = std::nullopt,
                     const std::optional<CompletenessCertificate>& certB = std::nullopt);

/// braidEulerOp of FT^k.
OperatorQ projectorTruncation(int n, const Coloring& gamma, int N, long k);

/// Sum of minimum colors over the negative crossings.
long negativeShift(const BraidWord& b, const Coloring& gamma);

struct StrandBlock {
    int lo = 0, hi = 0;  // 1-based inclusive strand range
};

/// Verifies that beyond a finite head every truncation operator factors
/// exactly as head times the tensor product of per-block operators, and
/// reports per-block stabilization.
StabReport horizontalFactorization(const InfiniteBraidWord& w, const Coloring& gamma,
                                   const std::vector<StrandBlock>& blocks, int N, long steps,
                                   const StabOptions& opt);

struct BiInfiniteWord {
    int n = 0;
    InfiniteBraidWord left;   // read outward from the core
    BraidWord core;
    InfiniteBraidWord right;  // read onward below the core
    Coloring gammaTop;

    Coloring gammaBottom() const;
    /// Absorb k1 letters of the left tail and k2 of the right tail into the
    /// core; both counts must be purity indices of their tails.
    BiInfiniteWord shiftStartingPoints(long k1, long k2) const;
};

StabReport biInfiniteAnalyze(const BiInfiniteWord& w, int N, long steps, const StabOptions& opt);

}  // namespace webq
