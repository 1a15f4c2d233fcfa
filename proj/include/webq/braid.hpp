#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace webq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IndexError : Error {
    using Error::Error;
};
struct NotColorPureError : Error {
    using Error::Error;
};
struct IntervalNotColorPureError : Error {
    using Error::Error;
};
struct IncompatibleWithPeriodError : Error {
    using Error::Error;
};
struct ClaspSearchExhaustedError : Error {
    using Error::Error;
};
struct BoundaryMismatchError : Error {
    using Error::Error;
};
struct BlockOverlapError : Error {
    using Error::Error;
};
struct DimensionLimitError : Error {
    using Error::Error;
};

/// Strand labels in {0,...,N}, read across the top of a diagram.
struct Coloring {
    int N = 0;
    std::vector<int> labels;

    int n() const { return static_cast<int>(labels.size()); }
    bool valid() const;
    bool uniform() const;
    bool operator==(const Coloring& o) const { return N == o.N && labels == o.labels; }
    bool operator!=(const Coloring& o) const { return !(*this == o); }
};

/// cs(gamma) = sum over strand pairs of the smaller label.
long colorSize(const std::vector<int>& labels);
inline long colorSize(const Coloring& g) { return colorSize(g.labels); }

struct BraidLetter {
    int index;  // 1-based generator index, 1 <= index <= n-1
    int sign;   // +1 or -1

    bool operator==(const BraidLetter& o) const { return index == o.index && sign == o.sign; }
};

/// Finite braid word; diagrams read top to bottom, letter 1 at the top.
struct BraidWord {
    int n = 0;
    std::vector<BraidLetter> letters;

    long size() const { return static_cast<long>(letters.size()); }
    bool positive() const;
    /// Image in S_n: perm[i] = endpoint (0-based strand slot) of the strand
    /// entering at slot i, composing letters top to bottom.
    std::vector<int> permutation() const;
    BraidWord concat(const BraidWord& o) const;
    BraidWord reversed() const;
    BraidWord inverse() const;
    BraidWord subword(long a, long b) const;  // letters a+1..b (1-based)
    bool operator==(const BraidWord& o) const { return n == o.n && letters == o.letters; }
};

/// gamma(ell): the coloring below the first ell letters when the top is gamma.
Coloring inducedColoring(const BraidWord& b, const Coloring& gamma, long ell);

/// All colorings gamma(0..|b|) in one pass.
std::vector<Coloring> colorTrace(const BraidWord& b, const Coloring& gamma);

/// (sigma_1 ... sigma_{n-1})^n, the positive full twist.
BraidWord fullTwist(int n);

/// Sum over crossings of min(two incident colors), with running colorings.
long minColorSum(const BraidWord& b, const Coloring& gamma);

bool isColorPure(const BraidWord& b, const Coloring& gamma);

/// Semi-infinite positive-or-mixed word presented as prefix + repeating
/// period. An empty period is allowed and models a word whose tail is
/// trivial (used for degenerate-system checks); all genuine semi-infinite
/// inputs carry a nonempty period.
struct InfiniteBraidWord {
    int n = 0;
    BraidWord prefix;
    BraidWord period;

    bool positive() const { return prefix.positive() && period.positive(); }
    /// 1-based letter access.
    BraidLetter letter(long k) const;
    bool finiteSupport() const { return period.letters.empty(); }
    BraidWord truncation(long ell) const;
    /// Drop the first k letters, re-presenting as prefix + period.
    InfiniteBraidWord dropPrefix(long k) const;
};

InfiniteBraidWord infiniteFullTwist(int n);

struct PuritySequence {
    Coloring gamma;
    std::vector<long> entries;  // strictly increasing prefix lengths
};

/// First `count` indices m with gamma(m) = gamma. Throws NotColorPureError
/// when the coloring never returns to gamma within one full cycle of the
/// (period-position, coloring) state.
PuritySequence maximalPuritySequence(const InfiniteBraidWord& w, const Coloring& gamma,
                                     long count);

struct Interval {
    long a;  // deletes letters a+1..b
    long b;
};

struct CertificateTail {
    long start = 0;
    long stride = 0;
    std::vector<Interval> pattern;  // offsets within one stride block
};

/// Deletion certificate: explicit head intervals plus an arithmetic tail
/// aligned with the word's period.
struct CompletenessCertificate {
    std::vector<Interval> head;
    std::optional<CertificateTail> tail;

    /// All intervals meeting [0, limit), in increasing order.
    std::vector<Interval> intervalsBelow(long limit) const;
};

/// Deletes the certified sub-braids. Checks that every interval is
/// color-pure at its start and that the tail is compatible with the
/// prefix+period presentation.
InfiniteBraidWord deleteSubbraids(const InfiniteBraidWord& w, const Coloring& gamma,
                                  const CompletenessCertificate& cert);

/// A positive braid move: far commutation of adjacent letters, or the
/// triangle relation on three adjacent letters (of equal sign).
struct BraidMove {
    enum class Kind { FarCommute, Triangle };
    Kind kind;
    long at;  // 0-based index of the first letter involved
};

bool moveApplies(const BraidWord& w, const BraidMove& m);
BraidWord applyMove(const BraidWord& w, const BraidMove& m);

struct ClaspResult {
    BraidWord word;
    long pos;  // 1-based: clasp occupies letters pos, pos+1
    std::vector<BraidMove> moves;
};

/// Budgeted breadth-first search through braid moves for a word containing
/// two adjacent equal letters. Deterministic: per level, candidate words are
/// expanded in lexicographic order and the smallest hit wins. Budget counts
/// expanded words; returns nullopt when it is exhausted.
std::optional<ClaspResult> findClasp(const BraidWord& b, const Coloring& gamma, long budget);

/// Mixed-sign variant: stops at the first word with two adjacent letters of
/// equal index, whatever their signs (a clasp or a canceling pair).
std::optional<ClaspResult> findAdjacentPair(const BraidWord& b, long budget);

enum class CertVerdict { Verified, Mismatch, BudgetExhausted };

struct CertCheck {
    CertVerdict verdict;
    std::string detail;
};

/// True verification per the color-completeness contract: every interval
/// color-pure, and the deleted word equals the infinite full twist after at
/// most `budget` braid moves applied within a window of one prefix plus two
/// periods (the tails beyond the window must agree letter for letter).
CertCheck verifyCompletenessCertificate(const InfiniteBraidWord& w, const Coloring& gamma,
                                        const CompletenessCertificate& cert, long budget);

}  // namespace webq
