#include "webq/skeleton.hpp"

#include <algorithm>

namespace webq {

namespace {

std::vector<int> ladderMidColoring(int a, int b, int k) {
    if (a >= b) return {b - k, a + k};
    return {b + k, a - k};
}

/// Smallest-color-size coloring strictly between the web's boundaries.
std::optional<std::vector<int>> interiorWitness(const LadderWeb& web, long boundaryCs) {
    auto cols = web.colorings();
    std::optional<std::vector<int>> best;
    long bestCs = boundaryCs;
    for (size_t i = 1; i + 1 < cols.size(); ++i) {
        long cs = colorSize(cols[i]);
        if (cs < bestCs) {
            bestCs = cs;
            best = cols[i];
        }
    }
    return best;
}

LadderWeb wordWithExpansion(const BraidWord& w, long letterIdx, const std::vector<int>& gammaTop,
                            const std::vector<RungCol>& repl, long letterCount) {
    LadderWeb web{w.n, gammaTop, {}};
    for (long t = 0; t < w.size(); ++t) {
        if (t == letterIdx) {
            for (const auto& r : repl) web.cols.push_back(r);
            t += letterCount - 1;
            continue;
        }
        web.cols.push_back(CrossCol{w.letters[t].index, w.letters[t].sign});
    }
    return web;
}

}  // namespace

ComplexSkeleton crossingSkeleton(int a, int b, int sign) {
    ComplexSkeleton s;
    s.top = {a, b};
    s.bottom = {b, a};
    int m = std::min(a, b);
    for (int k = 0; k <= m; ++k) {
        SkeletonTerm t;
        t.web = LadderWeb{2, {a, b}, {}};
        for (const auto& r : crossingLadderTerm(1, a, b, k)) t.web.cols.push_back(r);
        long h = sign > 0 ? k : m - k;
        t.h = h;
        t.qdeg = h;
        t.identityTag = (a == b && k == 0);
        if (k > 0) t.witness = ladderMidColoring(a, b, k);
        s.terms.push_back(std::move(t));
    }
    return s;
}

ComplexSkeleton braidSkeleton(const BraidWord& b, const Coloring& gamma) {
    auto trace = colorTrace(b, gamma);
    ComplexSkeleton s;
    s.top = gamma.labels;
    s.bottom = trace.back().labels;

    SkeletonTerm seed;
    seed.web = LadderWeb::identityWeb(gamma.labels);
    seed.identityTag = true;
    s.terms = {seed};
    long baseCs = colorSize(gamma.labels);

    for (long c = 0; c < b.size(); ++c) {
        const auto& l = b.letters[c];
        int x = trace[c].labels[l.index - 1], y = trace[c].labels[l.index];
        int m = std::min(x, y);
        std::vector<SkeletonTerm> next;
        for (const auto& t : s.terms)
            for (int k = 0; k <= m; ++k) {
                SkeletonTerm nt = t;
                for (const auto& r : crossingLadderTerm(l.index, x, y, k)) nt.web.cols.push_back(r);
                long h = l.sign > 0 ? k : m - k;
                nt.h += h;
                nt.qdeg += h;
                nt.identityTag = nt.identityTag && k == 0 && x == y;
                next.push_back(std::move(nt));
            }
        s.terms = std::move(next);
    }
    for (auto& t : s.terms)
        if (!t.identityTag) {
            auto w = interiorWitness(t.web, baseCs);
            if (w) t.witness = std::move(w);
        }
    return s;
}

ComplexSkeleton assembleMulticone(const MulticoneSpec& spec) {
    if (spec.parts.empty()) throw BoundaryMismatchError("assembleMulticone: no parts");
    ComplexSkeleton out;
    out.top = spec.parts.front().skel.top;
    out.bottom = spec.parts.front().skel.bottom;
    for (const auto& part : spec.parts) {
        if (part.skel.top != out.top || part.skel.bottom != out.bottom)
            throw BoundaryMismatchError("assembleMulticone: boundary colorings differ");
        for (const auto& t : part.skel.terms) {
            SkeletonTerm nt = t;
            nt.h += part.hShift;
            out.terms.push_back(std::move(nt));
        }
    }
    return out;
}

OperatorQ eulerOfSkeleton(const ComplexSkeleton& s, int N) {
    StateSpace dom = StateSpace::make(N, s.top);
    StateSpace cod = StateSpace::make(N, s.bottom);
    OperatorQ acc = OperatorQ::zero(dom, cod);
    for (const auto& t : s.terms) {
        OperatorQ op = webOp(t.web, N);
        acc = acc + op.scaled(Laurent::monomial(t.h % 2 == 0 ? 1 : -1, t.qdeg));
    }
    return acc;
}

namespace {

struct PipelineState {
    std::vector<int> gamma;  // boundary coloring, fixed throughout
    long baseCs = 0;
    std::vector<SkeletonTerm> xTerms;
    std::vector<EliminationRecord> log;
};

void pushTerm(PipelineState& st, LadderWeb web, long h, long q) {
    SkeletonTerm t;
    t.web = std::move(web);
    t.h = h;
    t.qdeg = q;
    t.witness = interiorWitness(t.web, st.baseCs);
    if (!t.witness)
        throw Error("color-pure simplification: summand lost its small-color witness");
    st.xTerms.push_back(std::move(t));
}

/// Leftmost crossing whose two incident colors agree; -1 when none.
long findUniCrossing(const BraidWord& w, const std::vector<int>& gamma) {
    std::vector<int> cur = gamma;
    for (long t = 0; t < w.size(); ++t) {
        int i = w.letters[t].index;
        if (cur[i - 1] == cur[i]) return t;
        std::swap(cur[i - 1], cur[i]);
    }
    return -1;
}

}  // namespace

ConePresentation simplifyColorPure(const BraidWord& b, const Coloring& gamma, long budget) {
    if (!b.positive()) throw Error("simplifyColorPure: word must be positive");
    if (!isColorPure(b, gamma)) throw NotColorPureError("simplifyColorPure: word is not color-pure");

    PipelineState st;
    st.gamma = gamma.labels;
    st.baseCs = colorSize(gamma.labels);
    BraidWord word = b;

    while (word.size() > 0) {
        long uni = findUniCrossing(word, st.gamma);
        if (uni >= 0) {
            auto trace = colorTrace(word, Coloring{gamma.N, st.gamma});
            int i = trace[uni].labels[word.letters[uni].index - 1];
            int pos = word.letters[uni].index;
            for (int k = 1; k <= i; ++k)
                pushTerm(st, wordWithExpansion(word, uni, st.gamma, crossingLadderTerm(pos, i, i, k), 1),
                         k - 1, k);
            st.log.push_back({"uni-crossing-expansion", uni + 1, {i}});
            word.letters.erase(word.letters.begin() + uni);
            continue;
        }

        auto clasp = findClasp(word, gamma, budget);
        if (!clasp)
            throw ClaspSearchExhaustedError("simplifyColorPure: clasp search budget exhausted");
        word = clasp->word;
        if (!clasp->moves.empty())
            st.log.push_back({"braid-moves", clasp->pos, {static_cast<long>(clasp->moves.size())}});

        long p0 = clasp->pos - 1;  // 0-based first letter of the clasp
        auto trace = colorTrace(word, Coloring{gamma.N, st.gamma});
        int pos = word.letters[p0].index;
        int a = trace[p0].labels[pos - 1], y = trace[p0].labels[pos];
        int m = std::min(a, y), d = std::abs(a - y);

        // resolutions of the two crossings away from bidegree (0,0)
        for (int k1 = 0; k1 <= m; ++k1)
            for (int k2 = 0; k2 <= m; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                auto rungs = crossingLadderTerm(pos, a, y, k1);
                auto second = crossingLadderTerm(pos, y, a, k2);
                rungs.insert(rungs.end(), second.begin(), second.end());
                pushTerm(st, wordWithExpansion(word, p0, st.gamma, rungs, 2), k1 + k2 - 1,
                         k1 + k2);
            }

        // split the h = 0 trapezoid: identity plus q-shifted opposite
        // trapezoids, one summand per binomial monomial. The summands are
        // certified removable; they stay in X at odd degree so that the
        // alternating sum over the presentation reproduces the braid
        // operator on the nose.
        for (int p = 1; p <= d; ++p) {
            Laurent coef = Laurent::qBinom(d, p);
            std::vector<RungCol> rungs =
                a < y ? std::vector<RungCol>{{pos, RungDir::MoveRight, p}, {pos, RungDir::MoveLeft, p}}
                      : std::vector<RungCol>{{pos, RungDir::MoveLeft, p}, {pos, RungDir::MoveRight, p}};
            for (const auto& [e, c] : coef.terms()) {
                unsigned long copies = mpz_class(c).get_ui();
                for (unsigned long t = 0; t < copies; ++t)
                    pushTerm(st, wordWithExpansion(word, p0, st.gamma, rungs, 2), 1, e);
            }
            st.log.push_back({"trapezoid-split", clasp->pos, {p}});
            st.log.push_back({"trapezoid-cancellation-certificate", clasp->pos, {p}});
        }
        if (d == 0) st.log.push_back({"clasp-expansion", clasp->pos, {a}});

        word.letters.erase(word.letters.begin() + p0, word.letters.begin() + p0 + 2);
    }

    ConePresentation out;
    out.identityTerm.web = LadderWeb::identityWeb(gamma.labels);
    out.identityTerm.identityTag = true;
    out.X.top = gamma.labels;
    out.X.bottom = gamma.labels;
    out.X.terms = std::move(st.xTerms);
    out.log = std::move(st.log);

    for (const auto& t : out.X.terms) {
        if (t.h < 0) throw Error("cone presentation: negative homological degree in X");
        if (!t.witness || colorSize(*t.witness) >= st.baseCs)
            throw Error("cone presentation: witness contract violated");
    }
    return out;
}

namespace {

long adjacentSameIndexPair(const BraidWord& w) {
    for (long t = 0; t + 1 < w.size(); ++t)
        if (w.letters[t].index == w.letters[t + 1].index) return t;
    return -1;
}

}  // namespace

ComplexSkeleton posnegSkeleton(const BraidWord& b, const Coloring& gamma, long budget) {
    if (!isColorPure(b, gamma)) throw NotColorPureError("posnegSkeleton: word is not color-pure");

    ComplexSkeleton out;
    out.top = gamma.labels;
    out.bottom = gamma.labels;
    long baseCs = colorSize(gamma.labels);

    BraidWord word = b;
    long hAcc = 0, qAcc = 0;

    auto push = [&](LadderWeb web, long h, long q) {
        SkeletonTerm t;
        t.web = std::move(web);
        t.h = h;
        t.qdeg = q;
        t.witness = interiorWitness(t.web, baseCs);
        if (!t.witness) throw Error("posnegSkeleton: summand lost its small-color witness");
        out.terms.push_back(std::move(t));
    };

    while (word.size() > 0) {
        long uni = findUniCrossing(word, gamma.labels);
        if (uni >= 0) {
            auto trace = colorTrace(word, gamma);
            int i = trace[uni].labels[word.letters[uni].index - 1];
            int pos = word.letters[uni].index;
            int sign = word.letters[uni].sign;
            for (int k = 1; k <= i; ++k) {
                long h = sign > 0 ? k : i - k;
                push(wordWithExpansion(word, uni, gamma.labels, crossingLadderTerm(pos, i, i, k), 1),
                     hAcc + h, qAcc + h);
            }
            if (sign < 0) {
                hAcc += i;
                qAcc += i;
            }
            word.letters.erase(word.letters.begin() + uni);
            continue;
        }

        // bring a canceling pair or a clasp adjacent by braid moves
        auto pair = findAdjacentPair(word, budget);
        if (!pair) throw ClaspSearchExhaustedError("posnegSkeleton: pair search budget exhausted");
        word = pair->word;

        long p0 = adjacentSameIndexPair(word);
        auto trace = colorTrace(word, gamma);
        int pos = word.letters[p0].index;
        int a = trace[p0].labels[pos - 1], y = trace[p0].labels[pos];
        int m = std::min(a, y), d = std::abs(a - y);
        int s1 = word.letters[p0].sign, s2 = word.letters[p0 + 1].sign;

        if (s1 != s2) {
            // canceling pair: shift and drop, no summands
            hAcc += m;
            qAcc += m;
            word.letters.erase(word.letters.begin() + p0, word.letters.begin() + p0 + 2);
            continue;
        }

        bool positiveClasp = s1 > 0;
        long trapezoidH = positiveClasp ? 0 : 2 * m;
        for (int k1 = 0; k1 <= m; ++k1)
            for (int k2 = 0; k2 <= m; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                auto rungs = crossingLadderTerm(pos, a, y, k1);
                auto second = crossingLadderTerm(pos, y, a, k2);
                rungs.insert(rungs.end(), second.begin(), second.end());
                long h = positiveClasp ? k1 + k2 : (m - k1) + (m - k2);
                push(wordWithExpansion(word, p0, gamma.labels, rungs, 2), hAcc + h, qAcc + h);
            }
        for (int p = 1; p <= d; ++p) {
            Laurent coef = Laurent::qBinom(d, p);
            std::vector<RungCol> rungs =
                a < y ? std::vector<RungCol>{{pos, RungDir::MoveRight, p}, {pos, RungDir::MoveLeft, p}}
                      : std::vector<RungCol>{{pos, RungDir::MoveLeft, p}, {pos, RungDir::MoveRight, p}};
            for (const auto& [e, c] : coef.terms()) {
                unsigned long copies = mpz_class(c).get_ui();
                for (unsigned long t = 0; t < copies; ++t)
                    push(wordWithExpansion(word, p0, gamma.labels, rungs, 2), hAcc + trapezoidH,
                         qAcc + trapezoidH + e);
            }
        }
        hAcc += trapezoidH;
        qAcc += trapezoidH;
        word.letters.erase(word.letters.begin() + p0, word.letters.begin() + p0 + 2);
    }

    SkeletonTerm id;
    id.web = LadderWeb::identityWeb(gamma.labels);
    id.h = hAcc;
    id.qdeg = qAcc;
    id.identityTag = true;
    out.terms.push_back(std::move(id));
    return out;
}

}  // namespace webq
