#include "webq/stab.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace webq {

namespace {

constexpr long kInf = LONG_MAX;

long effective(const std::optional<long>& v) { return v ? *v : kInf; }

bool nondecreasing(const std::vector<std::optional<long>>& xs) {
    long prev = LONG_MIN;
    for (const auto& x : xs) {
        long e = effective(x);
        if (e < prev) return false;
        prev = e;
    }
    return true;
}

}  // namespace

std::vector<long> InverseSystemSpec::sequence(long count) const {
    if (kind == Kind::MaximalPurity) return maximalPuritySequence(word, gamma, count).entries;
    std::vector<long> out;
    for (long m : subsequence) {
        if (!out.empty() && m <= out.back()) throw IndexError("subsequence must increase");
        if (inducedColoring(word.truncation(m), gamma, m).labels != gamma.labels)
            throw NotColorPureError("subsequence entry is not a purity index");
        out.push_back(m);
        if ((long)out.size() == count) break;
    }
    return out;
}

std::vector<BraidWord> truncations(const InverseSystemSpec& spec, long count) {
    std::vector<BraidWord> out;
    for (long m : spec.sequence(count)) out.push_back(spec.word.truncation(m));
    return out;
}

TwistDecomposition deriveDecomposition(const InfiniteBraidWord& w, const Coloring& gamma,
                                       const CompletenessCertificate& cert, long m) {
    (void)gamma;
    TwistDecomposition d;
    d.n = w.n;
    auto ivs = cert.intervalsBelow(m);
    if (w.finiteSupport()) m = std::min(m, w.prefix.size());
    long g = 0;
    size_t iv = 0;
    for (long k = 1; k <= m; ++k) {
        while (iv < ivs.size() && ivs[iv].b < k) ++iv;
        if (iv < ivs.size() && k == ivs[iv].a + 1) {
            d.gaps.push_back(g);
            d.insertionLengths.push_back(std::min(ivs[iv].b, m) - ivs[iv].a);
        }
        bool deleted = iv < ivs.size() && ivs[iv].a < k && k <= ivs[iv].b;
        if (!deleted) ++g;
    }
    d.twistLetters = g;
    long W = static_cast<long>(w.n) * (w.n - 1);
    d.z = W > 0 ? g / W : 0;
    return d;
}

long boundB(const TwistDecomposition& d) {
    long W = static_cast<long>(d.n) * (d.n - 1);
    long z = d.z;
    if (z == 0) return 0;
    if (d.gaps.empty()) return 2 * z;

    std::vector<long> gaps = d.gaps;
    std::sort(gaps.begin(), gaps.end());
    long r = static_cast<long>(gaps.size());

    auto lo = [&](long x) { return std::min(z, (x + W - 1) / W); };  // first twist at/after x
    auto hi = [&](long x) { return std::min(z, x / W); };            // twists fully before x

    long best = 2 * z;  // the empty assignment
    std::vector<long> f(r);
    for (long cap = 0; cap < z; ++cap) {
        // fewest breaks so that every run of surviving twists has length <= cap
        long ans = kInf;
        for (long j = 0; j < r; ++j) {
            long fj = kInf;
            if (hi(gaps[j]) <= cap) fj = 1;
            for (long j2 = 0; j2 < j; ++j2) {
                if (f[j2] == kInf) continue;
                long seg = std::max<long>(0, hi(gaps[j]) - lo(gaps[j2]));
                if (seg <= cap) fj = std::min(fj, f[j2] + 1);
            }
            f[j] = fj;
            if (fj != kInf && z - lo(gaps[j]) <= cap) ans = std::min(ans, fj);
        }
        if (ans != kInf) best = std::min(best, ans + 2 * cap);
    }
    return best;
}

long boundBExhaustive(const TwistDecomposition& d) {
    long W = static_cast<long>(d.n) * (d.n - 1);
    long z = d.z;
    if (z == 0) return 0;
    long r = static_cast<long>(d.gaps.size());
    if (r > 24) throw Error("boundBExhaustive: too many insertions");
    long best = kInf;
    for (long mask = 0; mask < (1L << r); ++mask) {
        std::vector<long> breaks;
        for (long j = 0; j < r; ++j)
            if (mask & (1L << j)) breaks.push_back(d.gaps[j]);
        long c2 = 0, run = 0;
        for (long t = 0; t < z; ++t) {
            bool killed = false, boundary = false;
            for (long p : breaks) {
                if (p > t * W && p < (t + 1) * W) killed = true;
                if (p == t * W) boundary = true;
            }
            if (boundary) run = 0;
            if (killed) {
                run = 0;
                continue;
            }
            ++run;
            c2 = std::max(c2, run);
        }
        best = std::min(best, static_cast<long>(__builtin_popcountl(mask)) + 2 * c2);
    }
    return best;
}

StabReport cauchyCertificate(const InverseSystemSpec& spec, const CompletenessCertificate& cert,
                             long count) {
    // interval purity and period compatibility; failures propagate
    deleteSubbraids(spec.word, spec.gamma, cert);

    StabReport rep;
    auto seq = spec.sequence(count);
    for (size_t i = 0; i < seq.size(); ++i) {
        auto d = deriveDecomposition(spec.word, spec.gamma, cert, seq[i]);
        StabStep s;
        s.ell = static_cast<long>(i) + 1;
        s.m = seq[i];
        s.z = d.z;
        s.b = boundB(d);
        rep.steps.push_back(std::move(s));
    }
    bool mono = true;
    for (size_t i = 1; i < rep.steps.size(); ++i)
        if (*rep.steps[i].b < *rep.steps[i - 1].b) mono = false;
    bool grows = rep.steps.size() >= 2 && *rep.steps.back().b > *rep.steps.front().b;
    // a word with a trivial tail accumulates no further twists: the bound
    // plateaus permanently, whatever the run shows
    bool plateau = spec.word.finiteSupport();
    rep.verdict = mono && grows && !plateau ? "CauchyCertified" : "NotCertified";
    if (!mono) rep.notes.push_back("bound is not nondecreasing");
    if (!grows) rep.notes.push_back("bound does not grow over the run");
    if (plateau) rep.notes.push_back("trivial tail: no twists accumulate");
    return rep;
}

namespace {

/// Euler operators of the truncations at the given lengths, built
/// incrementally letter by letter.
std::vector<OperatorQ> truncationOps(const InfiniteBraidWord& w, const Coloring& gamma, int N,
                                     const std::vector<long>& lengths, uint64_t dimLimit) {
    std::vector<OperatorQ> out;
    StateSpace top = StateSpace::make(N, gamma.labels);
    if (dimLimit > 0 && top.dim > dimLimit)
        throw DimensionLimitError("truncationOps: state space exceeds the configured ceiling");
    OperatorQ acc = OperatorQ::identity(top);
    std::vector<int> cur = gamma.labels;
    long pos = 0;
    for (long target : lengths) {
        while (pos < target) {
            ++pos;
            BraidLetter l = w.letter(pos);
            acc = compose(crossingEulerOp(l.index, l.sign, cur, N), acc);
            std::swap(cur[l.index - 1], cur[l.index]);
        }
        out.push_back(acc);
    }
    return out;
}

long zOfTruncation(const InfiniteBraidWord& w, const Coloring& gamma,
                   const std::optional<CompletenessCertificate>& cert, long m, long fallback) {
    if (!cert) return fallback;
    return deriveDecomposition(w, gamma, *cert, m).z;
}

/// Purity indices at which the twist count of the certified decomposition
/// first reaches each new value; one truncation step per twist level.
std::vector<long> zSteppedSequence(const InfiniteBraidWord& w, const Coloring& gamma,
                                   const CompletenessCertificate& cert, long steps) {
    long W = static_cast<long>(w.n) * (w.n - 1);
    long perLen = std::max<long>(w.period.size(), 1);
    long deletedPerBlock = 0, stride = perLen;
    if (cert.tail) {
        stride = cert.tail->stride;
        for (const auto& iv : cert.tail->pattern) deletedPerBlock += iv.b - iv.a;
    }
    long keptPerBlock = std::max<long>(1, stride - deletedPerBlock);
    long blocks = ((steps + 2) * std::max<long>(W, 1)) / keptPerBlock + 2;
    long cap = w.prefix.size() + (cert.tail ? cert.tail->start : 0) + blocks * stride + stride;
    if (w.finiteSupport()) cap = w.prefix.size();

    auto ivs = cert.intervalsBelow(cap + 1);
    std::vector<long> out;
    Coloring g = gamma;
    long kept = 0, lastZ = 0;
    size_t iv = 0;
    for (long ell = 1; ell <= cap && (long)out.size() < steps; ++ell) {
        int i = w.letter(ell).index;
        std::swap(g.labels[i - 1], g.labels[i]);
        while (iv < ivs.size() && ivs[iv].b < ell) ++iv;
        bool deleted = iv < ivs.size() && ivs[iv].a < ell && ell <= ivs[iv].b;
        if (!deleted) ++kept;
        if (g.labels == gamma.labels && W > 0 && kept / W > lastZ) {
            lastZ = kept / W;
            out.push_back(ell);
        }
    }
    return out;
}

}  // namespace

StabReport stabilize(const InverseSystemSpec& specA, const InverseSystemSpec& specB, int N,
                     long steps, const StabOptions& opt,
                     const std::optional<CompletenessCertificate>& certA,
                     const std::optional<CompletenessCertificate>& certB) {
    if (specA.gamma.labels != specB.gamma.labels)
        throw BoundaryMismatchError("stabilize: systems must share the coloring");

    StabReport rep;
    std::vector<long> seqB;
    if (certB && specB.kind == InverseSystemSpec::Kind::MaximalPurity)
        seqB = zSteppedSequence(specB.word, specB.gamma, *certB, steps);
    else
        seqB = specB.sequence(steps);
    if (seqB.empty()) {
        rep.verdict = "NotConverging";
        rep.notes.push_back("no truncation steps available");
        return rep;
    }
    auto opsB = truncationOps(specB.word, specB.gamma, N, seqB, opt.dimLimit);
    StateSpace top = StateSpace::make(N, specB.gamma.labels);
    OperatorQ prev = OperatorQ::identity(top);

    // reference-side truncations at each required twist count
    std::vector<long> zTargets;
    for (size_t i = 0; i < seqB.size(); ++i)
        zTargets.push_back(
            zOfTruncation(specB.word, specB.gamma, certB, seqB[i], static_cast<long>(i) + 1));
    std::map<long, OperatorQ> refAtZ;
    {
        long maxZ = *std::max_element(zTargets.begin(), zTargets.end());
        long cap = specA.word.prefix.size() +
                   (maxZ + 2) * std::max<long>(1, specA.word.period.size()) *
                       std::max<long>(1, specA.word.n);
        std::vector<long> seqA;
        try {
            seqA = maximalPuritySequence(specA.word, specA.gamma, cap).entries;
        } catch (const NotColorPureError&) {
            seqA = {};
        }
        std::vector<long> needed;
        OperatorQ acc = OperatorQ::identity(top);
        std::vector<int> cur = specA.gamma.labels;
        long pos = 0;
        for (long m : seqA) {
            long zA = zOfTruncation(specA.word, specA.gamma, certA, m,
                                    static_cast<long>(needed.size()) + 1);
            bool want = std::find(zTargets.begin(), zTargets.end(), zA) != zTargets.end() &&
                        refAtZ.find(zA) == refAtZ.end();
            if (!want && zA > *std::max_element(zTargets.begin(), zTargets.end())) break;
            while (pos < m) {
                ++pos;
                BraidLetter l = specA.word.letter(pos);
                acc = compose(crossingEulerOp(l.index, l.sign, cur, N), acc);
                std::swap(cur[l.index - 1], cur[l.index]);
            }
            if (want) refAtZ.emplace(zA, acc);
            needed.push_back(m);
            if (refAtZ.size() == zTargets.size()) break;
        }
    }

    for (size_t i = 0; i < seqB.size(); ++i) {
        StabStep s;
        s.ell = static_cast<long>(i) + 1;
        s.m = seqB[i];
        s.z = zTargets[i];
        if (certB) s.b = boundB(deriveDecomposition(specB.word, specB.gamma, *certB, seqB[i]));
        s.qdiffPrev = minDiffDeg(opsB[i], prev);
        auto it = refAtZ.find(zTargets[i]);
        if (it != refAtZ.end()) s.qdiffFt = minDiffDeg(opsB[i], it->second);
        s.digest = opsB[i].truncated(opt.precision).digest();
        prev = opsB[i];
        rep.steps.push_back(std::move(s));
    }

    std::vector<std::optional<long>> prevSeq, crossSeq;
    for (const auto& s : rep.steps) {
        prevSeq.push_back(s.qdiffPrev);
        if (refAtZ.count(*s.z)) crossSeq.push_back(s.qdiffFt);
    }
    bool ok = nondecreasing(prevSeq) && nondecreasing(crossSeq);
    if (!prevSeq.empty() && effective(prevSeq.back()) < opt.precision) ok = false;
    if (!crossSeq.empty() && effective(crossSeq.back()) < opt.precision) ok = false;
    rep.verdict = ok ? "Converging" : "NotConverging";
    return rep;
}

OperatorQ projectorTruncation(int n, const Coloring& gamma, int N, long k) {
    BraidWord ftk{n, {}};
    BraidWord ft = fullTwist(n);
    for (long t = 0; t < k; ++t) ftk = ftk.concat(ft);
    return braidEulerOp(ftk, gamma, N);
}

long negativeShift(const BraidWord& b, const Coloring& gamma) {
    Coloring g = gamma;
    long t = 0;
    for (const auto& l : b.letters) {
        if (l.sign < 0) t += std::min(g.labels[l.index - 1], g.labels[l.index]);
        std::swap(g.labels[l.index - 1], g.labels[l.index]);
    }
    return t;
}

StabReport horizontalFactorization(const InfiniteBraidWord& w, const Coloring& gamma,
                                   const std::vector<StrandBlock>& blocks, int N, long steps,
                                   const StabOptions& opt) {
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].lo < 1 || blocks[i].hi > w.n || blocks[i].lo > blocks[i].hi)
            throw BlockOverlapError("horizontalFactorization: block out of range");
        if (i > 0 && blocks[i].lo <= blocks[i - 1].hi)
            throw BlockOverlapError("horizontalFactorization: blocks overlap");
    }
    auto blockOf = [&](int index) -> int {
        for (size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b].lo <= index && index + 1 <= blocks[b].hi) return static_cast<int>(b);
        return -1;
    };
    for (const auto& l : w.period.letters)
        if (blockOf(l.index) < 0)
            throw BlockOverlapError("horizontalFactorization: period letter outside the blocks");
    long r = 0;
    for (long t = 0; t < w.prefix.size(); ++t)
        if (blockOf(w.prefix.letters[t].index) < 0) r = t + 1;

    BraidWord head = w.truncation(r);
    Coloring gammaR = inducedColoring(head, gamma, r);
    OperatorQ headOp = braidEulerOp(head, gamma, N, opt.dimLimit);

    StabReport rep;
    std::vector<long> seq;
    for (long m : maximalPuritySequence(w, gamma, steps + r).entries)
        if (m >= r && (long)seq.size() < steps) seq.push_back(m);

    std::vector<std::vector<std::optional<long>>> blockDiffs(blocks.size());
    std::vector<OperatorQ> blockPrev;
    for (const auto& bl : blocks) {
        std::vector<int> local(gammaR.labels.begin() + (bl.lo - 1), gammaR.labels.begin() + bl.hi);
        blockPrev.push_back(OperatorQ::identity(StateSpace::make(N, local)));
    }

    std::vector<long> blockLen(blocks.size(), 0);
    bool exact = true;
    for (size_t i = 0; i < seq.size(); ++i) {
        long m = seq[i];
        BraidWord full = w.truncation(m);
        OperatorQ whole = braidEulerOp(full, gamma, N, opt.dimLimit);

        OperatorQ assembled = OperatorQ::identity(StateSpace::make(N, gammaR.labels));
        for (size_t b = 0; b < blocks.size(); ++b) {
            BraidWord local{blocks[b].hi - blocks[b].lo + 1, {}};
            for (long t = r; t < m; ++t) {
                const auto& l = full.letters[t];
                if (blockOf(l.index) == static_cast<int>(b))
                    local.letters.push_back({l.index - blocks[b].lo + 1, l.sign});
            }
            std::vector<int> localGamma(gammaR.labels.begin() + (blocks[b].lo - 1),
                                        gammaR.labels.begin() + blocks[b].hi);
            OperatorQ blockOp = braidEulerOp(local, Coloring{gamma.N, localGamma}, N);
            // the block stabilizes along the steps where it actually grows
            if (local.size() > blockLen[b]) {
                blockDiffs[b].push_back(minDiffDeg(blockOp, blockPrev[b]));
                blockLen[b] = local.size();
            }
            blockPrev[b] = blockOp;
            assembled = compose(promote(blockOp, assembled.cod(), blocks[b].lo - 1), assembled);
        }
        OperatorQ candidate = compose(assembled, headOp);

        StabStep s;
        s.ell = static_cast<long>(i) + 1;
        s.m = m;
        bool eq = candidate == whole;
        exact = exact && eq;
        s.qdiffPrev = minDiffDeg(whole, candidate);  // nullopt iff exact factorization
        s.digest = whole.truncated(opt.precision).digest();
        rep.steps.push_back(std::move(s));
        if (!eq) rep.notes.push_back("step " + std::to_string(i + 1) + ": factorization differs");
    }
    bool stab = true;
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (!nondecreasing(blockDiffs[b])) {
            stab = false;
            rep.notes.push_back("block " + std::to_string(b + 1) + ": diffs not nondecreasing");
        }
    }
    rep.verdict = exact ? (stab ? "Factorized" : "FactorizedNotStabilizing") : "NotFactorized";
    return rep;
}

Coloring BiInfiniteWord::gammaBottom() const {
    return inducedColoring(core, gammaTop, core.size());
}

BiInfiniteWord BiInfiniteWord::shiftStartingPoints(long k1, long k2) const {
    BraidWord lw = left.truncation(k1);
    if (inducedColoring(lw, gammaTop, k1).labels != gammaTop.labels)
        throw NotColorPureError("shiftStartingPoints: left count is not a purity index");
    Coloring gb = gammaBottom();
    BraidWord rw = right.truncation(k2);
    if (inducedColoring(rw, gb, k2).labels != gb.labels)
        throw NotColorPureError("shiftStartingPoints: right count is not a purity index");
    BiInfiniteWord out;
    out.n = n;
    out.core = lw.reversed().concat(core).concat(rw);
    out.left = left.dropPrefix(k1);
    out.right = right.dropPrefix(k2);
    out.gammaTop = gammaTop;
    return out;
}

StabReport biInfiniteAnalyze(const BiInfiniteWord& w, int N, long steps, const StabOptions& opt) {
    Coloring gb = w.gammaBottom();
    auto leftSeq = maximalPuritySequence(w.left, w.gammaTop, steps).entries;
    auto rightSeq = maximalPuritySequence(w.right, gb, steps).entries;

    StabReport rep;
    std::optional<OperatorQ> prev;
    for (long i = 0; i < steps && i < (long)leftSeq.size() && i < (long)rightSeq.size(); ++i) {
        BraidWord word = w.left.truncation(leftSeq[i]).reversed().concat(w.core).concat(
            w.right.truncation(rightSeq[i]));
        OperatorQ op = braidEulerOp(word, w.gammaTop, N, opt.dimLimit);
        StabStep s;
        s.ell = i + 1;
        s.m = word.size();
        if (prev) s.qdiffPrev = minDiffDeg(op, *prev);
        s.digest = op.truncated(opt.precision).digest();
        prev = op;
        rep.steps.push_back(std::move(s));
    }
    std::vector<std::optional<long>> diffs;
    for (size_t i = 1; i < rep.steps.size(); ++i) diffs.push_back(rep.steps[i].qdiffPrev);
    bool ok = nondecreasing(diffs);
    if (!diffs.empty() && effective(diffs.back()) < opt.precision) ok = false;
    rep.verdict = ok ? "Converging" : "NotConverging";
    return rep;
}

}  // namespace webq
