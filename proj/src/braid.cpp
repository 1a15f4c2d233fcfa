#include "webq/braid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace webq {

bool Coloring::valid() const {
    for (int c : labels)
        if (c < 0 || c > N) return false;
    return true;
}

bool Coloring::uniform() const {
    for (int c : labels)
        if (c != labels[0]) return false;
    return true;
}

long colorSize(const std::vector<int>& labels) {
    long s = 0;
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j) s += std::min(labels[i], labels[j]);
    return s;
}

bool BraidWord::positive() const {
    for (const auto& l : letters)
        if (l.sign != 1) return false;
    return true;
}

std::vector<int> BraidWord::permutation() const {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // perm[slot] = strand occupying that slot, built top to bottom; invert at the end
    std::vector<int> slots(n);
    std::iota(slots.begin(), slots.end(), 0);
    for (const auto& l : letters) std::swap(slots[l.index - 1], slots[l.index]);
    for (int i = 0; i < n; ++i) perm[slots[i]] = i;
    return perm;
}

BraidWord BraidWord::concat(const BraidWord& o) const {
    if (n != o.n) throw BoundaryMismatchError("concat: strand counts differ");
    BraidWord r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
}

BraidWord BraidWord::reversed() const {
    BraidWord r{n, {letters.rbegin(), letters.rend()}};
    return r;
}

BraidWord BraidWord::inverse() const {
    BraidWord r = reversed();
    for (auto& l : r.letters) l.sign = -l.sign;
    return r;
}

BraidWord BraidWord::subword(long a, long b) const {
    if (a < 0 || b > size() || a > b) throw IndexError("subword: bad range");
    BraidWord r{n, {letters.begin() + a, letters.begin() + b}};
    return r;
}

Coloring inducedColoring(const BraidWord& b, const Coloring& gamma, long ell) {
    if (ell < 0 || ell > b.size()) throw IndexError("inducedColoring: index out of range");
    if (gamma.n() != b.n) throw BoundaryMismatchError("inducedColoring: coloring size");
    Coloring g = gamma;
    for (long k = 0; k < ell; ++k) {
        int i = b.letters[k].index;
        std::swap(g.labels[i - 1], g.labels[i]);
    }
    return g;
}

std::vector<Coloring> colorTrace(const BraidWord& b, const Coloring& gamma) {
    std::vector<Coloring> out;
    out.reserve(b.size() + 1);
    Coloring g = gamma;
    out.push_back(g);
    for (const auto& l : b.letters) {
        std::swap(g.labels[l.index - 1], g.labels[l.index]);
        out.push_back(g);
    }
    return out;
}

BraidWord fullTwist(int n) {
    if (n < 1) throw IndexError("fullTwist: n must be positive");
    BraidWord r{n, {}};
    for (int rep = 0; rep < n; ++rep)
        for (int i = 1; i < n; ++i) r.letters.push_back({i, +1});
    return r;
}

long minColorSum(const BraidWord& b, const Coloring& gamma) {
    Coloring g = gamma;
    long s = 0;
    for (const auto& l : b.letters) {
        s += std::min(g.labels[l.index - 1], g.labels[l.index]);
        std::swap(g.labels[l.index - 1], g.labels[l.index]);
    }
    return s;
}

bool isColorPure(const BraidWord& b, const Coloring& gamma) {
    return inducedColoring(b, gamma, b.size()).labels == gamma.labels;
}

BraidLetter InfiniteBraidWord::letter(long k) const {
    if (k < 1) throw IndexError("letter: 1-based index expected");
    long pl = prefix.size();
    if (k <= pl) return prefix.letters[k - 1];
    if (finiteSupport()) throw IndexError("letter: beyond finite support");
    return period.letters[(k - pl - 1) % period.size()];
}

BraidWord InfiniteBraidWord::truncation(long ell) const {
    if (ell < 0) throw IndexError("truncation: negative length");
    BraidWord r{n, {}};
    long pl = prefix.size();
    for (long k = 1; k <= ell; ++k) {
        if (k > pl && finiteSupport()) break;
        r.letters.push_back(letter(k));
    }
    return r;
}

InfiniteBraidWord InfiniteBraidWord::dropPrefix(long k) const {
    if (k < 0) throw IndexError("dropPrefix: negative count");
    long pl = prefix.size();
    InfiniteBraidWord r{n, {n, {}}, period};
    if (k <= pl) {
        r.prefix.letters.assign(prefix.letters.begin() + k, prefix.letters.end());
        return r;
    }
    if (finiteSupport()) {
        return r;  // nothing left
    }
    long rot = (k - pl) % period.size();
    BraidWord per{n, {}};
    for (long t = 0; t < period.size(); ++t)
        per.letters.push_back(period.letters[(rot + t) % period.size()]);
    r.period = per;
    return r;
}

InfiniteBraidWord infiniteFullTwist(int n) { return {n, {n, {}}, fullTwist(n)}; }

PuritySequence maximalPuritySequence(const InfiniteBraidWord& w, const Coloring& gamma,
                                     long count) {
    if (gamma.n() != w.n) throw BoundaryMismatchError("maximalPuritySequence: coloring size");
    PuritySequence out{gamma, {}};
    Coloring g = gamma;
    long pl = w.prefix.size();

    if (w.finiteSupport()) {
        for (long ell = 1; ell <= pl && (long)out.entries.size() < count; ++ell) {
            int i = w.letter(ell).index;
            std::swap(g.labels[i - 1], g.labels[i]);
            if (g.labels == gamma.labels) out.entries.push_back(ell);
        }
        if ((long)out.entries.size() < count) {
            if (inducedColoring(w.prefix, gamma, pl).labels != gamma.labels)
                throw NotColorPureError("word is not color-pure for the given coloring");
            long next = out.entries.empty() ? std::max<long>(pl, 1) : out.entries.back() + 1;
            while ((long)out.entries.size() < count) out.entries.push_back(next++);
        }
        return out;
    }

    long per = w.period.size();
    std::map<std::pair<long, std::vector<int>>, long> seen;
    for (long ell = 1; (long)out.entries.size() < count; ++ell) {
        int i = w.letter(ell).index;
        std::swap(g.labels[i - 1], g.labels[i]);
        if (g.labels == gamma.labels) out.entries.push_back(ell);
        if (ell >= pl) {
            auto key = std::make_pair((ell - pl) % per, g.labels);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(std::move(key), ell);
            } else if (out.entries.empty() || out.entries.back() <= it->second) {
                // the (period-position, coloring) state closed a cycle with
                // no purity index inside it
                throw NotColorPureError(
                    "no purity index recurs within one coloring cycle of the period");
            }
        }
    }
    return out;
}

std::vector<Interval> CompletenessCertificate::intervalsBelow(long limit) const {
    std::vector<Interval> out;
    for (const auto& iv : head)
        if (iv.a < limit) out.push_back(iv);
    if (tail) {
        for (long t = 0;; ++t) {
            bool any = false;
            for (const auto& off : tail->pattern) {
                Interval iv{tail->start + t * tail->stride + off.a,
                            tail->start + t * tail->stride + off.b};
                if (iv.a < limit) {
                    out.push_back(iv);
                    any = true;
                }
            }
            if (!any && !tail->pattern.empty()) break;
            if (tail->pattern.empty()) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    return out;
}

namespace {

void validateIntervals(const std::vector<Interval>& ivs) {
    long prev = -1;
    for (const auto& iv : ivs) {
        if (iv.a < 0 || iv.b <= iv.a) throw IncompatibleWithPeriodError("bad interval");
        if (iv.a < prev) throw IncompatibleWithPeriodError("intervals overlap");
        prev = iv.b;
    }
}

BraidWord deleteFromWord(const BraidWord& w, const std::vector<Interval>& ivs) {
    BraidWord r{w.n, {}};
    size_t iv = 0;
    for (long k = 1; k <= w.size(); ++k) {
        while (iv < ivs.size() && ivs[iv].b < k) ++iv;
        bool deleted = iv < ivs.size() && ivs[iv].a < k && k <= ivs[iv].b;
        if (!deleted) r.letters.push_back(w.letters[k - 1]);
    }
    return r;
}

}  // namespace

InfiniteBraidWord deleteSubbraids(const InfiniteBraidWord& w, const Coloring& gamma,
                                  const CompletenessCertificate& cert) {
    long pl = w.prefix.size();
    std::vector<Interval> head = cert.head;
    std::sort(head.begin(), head.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    validateIntervals(head);

    long headEnd = head.empty() ? 0 : head.back().b;
    long tailStart = cert.tail ? cert.tail->start : headEnd;
    if (cert.tail) {
        if (w.finiteSupport()) throw IncompatibleWithPeriodError("tail on finite-support word");
        if (cert.tail->stride <= 0 || cert.tail->stride % w.period.size() != 0)
            throw IncompatibleWithPeriodError("tail stride must be a positive multiple of the period");
        if (tailStart < pl)
            throw IncompatibleWithPeriodError("tail must start at or after the prefix");
        if (headEnd > tailStart)
            throw IncompatibleWithPeriodError("head intervals must precede the tail");
        validateIntervals(cert.tail->pattern);
        for (const auto& off : cert.tail->pattern)
            if (off.b > cert.tail->stride)
                throw IncompatibleWithPeriodError("tail pattern exceeds the stride");
    }

    // Purity of head intervals, against the original colorings.
    BraidWord headRegion = w.truncation(std::max(headEnd, tailStart));
    auto trace = colorTrace(headRegion, gamma);
    for (const auto& iv : head) {
        if (iv.b > headRegion.size()) throw IncompatibleWithPeriodError("head interval out of range");
        if (trace[iv.a].labels != trace[iv.b].labels)
            throw IntervalNotColorPureError("head interval is not color-pure at its start");
    }

    // New prefix: everything up to the tail start, head intervals removed.
    BraidWord upToTail = w.truncation(tailStart);
    BraidWord newPrefix = deleteFromWord(upToTail, head);

    if (!cert.tail || cert.tail->pattern.empty()) {
        // Word continues unchanged beyond the deleted region.
        InfiniteBraidWord rest = w.dropPrefix(std::max(headEnd, tailStart));
        InfiniteBraidWord r{w.n, newPrefix.concat(rest.prefix), rest.period};
        return r;
    }

    // Tail purity: walk stride blocks until the block-start coloring cycles.
    long stride = cert.tail->stride;
    BraidWord blockWord{w.n, {}};
    for (long d = 1; d <= stride; ++d) blockWord.letters.push_back(w.letter(tailStart + d));
    Coloring blockTop = inducedColoring(headRegion, gamma, tailStart);
    std::set<std::vector<int>> seenTops;
    Coloring cur = blockTop;
    while (seenTops.insert(cur.labels).second) {
        auto blockTrace = colorTrace(blockWord, cur);
        for (const auto& off : cert.tail->pattern)
            if (blockTrace[off.a].labels != blockTrace[off.b].labels)
                throw IntervalNotColorPureError("tail interval is not color-pure at its start");
        cur = blockTrace.back();
    }

    BraidWord newPeriod = deleteFromWord(blockWord, cert.tail->pattern);
    return {w.n, newPrefix, newPeriod};
}

bool moveApplies(const BraidWord& w, const BraidMove& m) {
    long L = w.size();
    if (m.kind == BraidMove::Kind::FarCommute) {
        if (m.at < 0 || m.at + 1 >= L) return false;
        return std::abs(w.letters[m.at].index - w.letters[m.at + 1].index) >= 2;
    }
    if (m.at < 0 || m.at + 2 >= L) return false;
    const auto &a = w.letters[m.at], &b = w.letters[m.at + 1], &c = w.letters[m.at + 2];
    return a.index == c.index && std::abs(a.index - b.index) == 1 && a.sign == b.sign &&
           b.sign == c.sign;
}

BraidWord applyMove(const BraidWord& w, const BraidMove& m) {
    if (!moveApplies(w, m)) throw IndexError("applyMove: move does not apply");
    BraidWord r = w;
    if (m.kind == BraidMove::Kind::FarCommute) {
        std::swap(r.letters[m.at], r.letters[m.at + 1]);
    } else {
        int a = r.letters[m.at].index, b = r.letters[m.at + 1].index;
        r.letters[m.at].index = b;
        r.letters[m.at + 1].index = a;
        r.letters[m.at + 2].index = b;
    }
    return r;
}

namespace {

using Key = std::vector<int>;  // signed letter encoding: sign * index

Key keyOf(const BraidWord& w) {
    Key k;
    k.reserve(w.letters.size());
    for (const auto& l : w.letters) k.push_back(l.sign * l.index);
    return k;
}

BraidWord wordOf(int n, const Key& k) {
    BraidWord w{n, {}};
    for (int v : k) w.letters.push_back({std::abs(v), v < 0 ? -1 : +1});
    return w;
}

long adjacentEqualPair(const Key& k) {
    for (size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i] == k[i + 1] && k[i] > 0) return static_cast<long>(i) + 1;  // 1-based
    return 0;
}

struct BfsResult {
    enum class Outcome { Found, Exhausted, Budget } outcome;
    Key hit;
    std::vector<BraidMove> moves;
};

/// Level-synchronous BFS over braid moves from `start`, stopping at the first
/// level containing a key satisfying `goal` (smallest such key wins). When
/// `target` is set the goal is equality with it.
template <typename Goal>
BfsResult braidMoveBfs(int n, const Key& start, Goal goal, long budget) {
    std::map<Key, std::pair<Key, BraidMove>> parent;
    if (goal(start)) return {BfsResult::Outcome::Found, start, {}};
    std::vector<Key> level{start};
    std::set<Key> visited{start};
    long expanded = 0;
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        std::vector<Key> next;
        std::vector<Key> hits;
        for (const auto& key : level) {
            if (++expanded > budget) return {BfsResult::Outcome::Budget, {}, {}};
            BraidWord w = wordOf(n, key);
            long L = w.size();
            for (long at = 0; at < L; ++at) {
                for (auto kind : {BraidMove::Kind::FarCommute, BraidMove::Kind::Triangle}) {
                    BraidMove m{kind, at};
                    if (!moveApplies(w, m)) continue;
                    Key k2 = keyOf(applyMove(w, m));
                    if (!visited.insert(k2).second) continue;
                    parent.emplace(k2, std::make_pair(key, m));
                    next.push_back(k2);
                    if (goal(k2)) hits.push_back(k2);
                }
            }
        }
        if (!hits.empty()) {
            Key best = *std::min_element(hits.begin(), hits.end());
            std::vector<BraidMove> moves;
            Key cur = best;
            while (cur != start) {
                auto& [p, m] = parent.at(cur);
                moves.push_back(m);
                cur = p;
            }
            std::reverse(moves.begin(), moves.end());
            return {BfsResult::Outcome::Found, best, moves};
        }
        level = std::move(next);
    }
    return {BfsResult::Outcome::Exhausted, {}, {}};
}

}  // namespace

std::optional<ClaspResult> findClasp(const BraidWord& b, const Coloring& gamma, long budget) {
    if (!b.positive()) throw IndexError("findClasp: word must be positive");
    (void)gamma;
    auto res = braidMoveBfs(b.n, keyOf(b), [](const Key& k) { return adjacentEqualPair(k) > 0; },
                            budget);
    if (res.outcome != BfsResult::Outcome::Found) return std::nullopt;
    BraidWord w = wordOf(b.n, res.hit);
    return ClaspResult{w, adjacentEqualPair(res.hit), res.moves};
}

std::optional<ClaspResult> findAdjacentPair(const BraidWord& b, long budget) {
    auto goal = [](const Key& k) {
        for (size_t i = 0; i + 1 < k.size(); ++i)
            if (std::abs(k[i]) == std::abs(k[i + 1])) return true;
        return false;
    };
    auto res = braidMoveBfs(b.n, keyOf(b), goal, budget);
    if (res.outcome != BfsResult::Outcome::Found) return std::nullopt;
    BraidWord w = wordOf(b.n, res.hit);
    long pos = 0;
    for (size_t i = 0; i + 1 < res.hit.size(); ++i)
        if (std::abs(res.hit[i]) == std::abs(res.hit[i + 1])) {
            pos = static_cast<long>(i) + 1;
            break;
        }
    return ClaspResult{w, pos, res.moves};
}

namespace {

std::vector<std::pair<int, int>> crossingColorPairs(const BraidWord& w, const Coloring& gamma) {
    std::vector<std::pair<int, int>> pairs;
    Coloring g = gamma;
    for (const auto& l : w.letters) {
        int a = g.labels[l.index - 1], b = g.labels[l.index];
        pairs.emplace_back(std::min(a, b), std::max(a, b));
        std::swap(g.labels[l.index - 1], g.labels[l.index]);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

CertCheck verifyCompletenessCertificate(const InfiniteBraidWord& w, const Coloring& gamma,
                                        const CompletenessCertificate& cert, long budget) {
    InfiniteBraidWord d = deleteSubbraids(w, gamma, cert);
    InfiniteBraidWord ft = infiniteFullTwist(w.n);

    if (w.n > 1 && d.finiteSupport())
        return {CertVerdict::Mismatch, "deleted word has a trivial tail"};

    long window = d.prefix.size() + 2 * d.period.size();
    if (window == 0 && w.n > 1) return {CertVerdict::Mismatch, "deleted word is empty"};

    // Beyond the window, the words must agree letter for letter: braid moves
    // are confined to the window and preserve its length.
    if (w.n > 1) {
        long cycle = std::lcm(std::max<long>(d.period.size(), 1),
                              std::max<long>(ft.period.size(), 1));
        for (long pos = window + 1; pos <= window + cycle; ++pos) {
            if (!(d.letter(pos) == ft.letter(pos)))
                return {CertVerdict::Mismatch, "tail disagrees with the infinite full twist"};
        }
    }

    BraidWord wd = d.truncation(window);
    BraidWord wft = ft.truncation(window);
    if (wd == wft) return {CertVerdict::Verified, ""};
    if (wd.permutation() != wft.permutation())
        return {CertVerdict::Mismatch, "window permutations differ"};
    if (crossingColorPairs(wd, gamma) != crossingColorPairs(wft, gamma))
        return {CertVerdict::Mismatch, "window crossing colors differ"};

    Key target = keyOf(wft);
    auto res = braidMoveBfs(w.n, keyOf(wd), [&](const Key& k) { return k == target; }, budget);
    switch (res.outcome) {
        case BfsResult::Outcome::Found:
            return {CertVerdict::Verified, ""};
        case BfsResult::Outcome::Exhausted:
            return {CertVerdict::Mismatch, "window words are not braid move equivalent"};
        default:
            return {CertVerdict::BudgetExhausted, "move budget exhausted"};
    }
}

}  // namespace webq
