#include "webq/webs.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace webq {

namespace {

/// Pairs (x in A, y in B) with x > y, for disjoint bitmasks.
long crossingPairs(uint32_t A, uint32_t B) {
    long t = 0;
    for (uint32_t a = A; a; a &= a - 1) {
        int x = __builtin_ctz(a);
        t += __builtin_popcount(B & ((1u << x) - 1));
    }
    return t;
}

// q-exponents at the two trivalent vertices. Locked by the relation suite
// (digon, square switch, braid moves); see the tests.
Laurent splitCoeff(uint32_t A, uint32_t B) {
    return Laurent::monomial(1, -crossingPairs(B, A));
}

Laurent mergeCoeff(uint32_t A, uint32_t B) {
    return Laurent::monomial(1, crossingPairs(A, B));
}

std::vector<int> spliceLabels(const std::vector<int>& gamma, int pos, int take,
                              std::vector<int> repl) {
    std::vector<int> out(gamma.begin(), gamma.begin() + (pos - 1));
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), gamma.begin() + (pos - 1) + take, gamma.end());
    return out;
}

}  // namespace

LadderWeb LadderWeb::identityWeb(const std::vector<int>& top) {
    return {static_cast<int>(top.size()), top, {}};
}

LadderWeb LadderWeb::fromWord(const BraidWord& b, const std::vector<int>& top) {
    LadderWeb w{b.n, top, {}};
    for (const auto& l : b.letters) w.cols.push_back(CrossCol{l.index, l.sign});
    return w;
}

bool LadderWeb::isIdentityDiagram() const {
    for (const auto& c : cols) {
        if (std::holds_alternative<CrossCol>(c)) return false;
        if (std::get<RungCol>(c).label != 0) return false;
    }
    return true;
}

std::vector<std::vector<int>> LadderWeb::colorings() const {
    std::vector<std::vector<int>> out;
    out.reserve(cols.size() + 1);
    std::vector<int> cur = top;
    out.push_back(cur);
    for (const auto& c : cols) {
        if (std::holds_alternative<CrossCol>(c)) {
            const auto& x = std::get<CrossCol>(c);
            std::swap(cur[x.pos - 1], cur[x.pos]);
        } else {
            const auto& r = std::get<RungCol>(c);
            int d = r.dir == RungDir::MoveRight ? r.label : -r.label;
            cur[r.pos - 1] -= d;
            cur[r.pos] += d;
        }
        out.push_back(cur);
    }
    return out;
}

long minColorSumWeb(const LadderWeb& w) {
    long s = 0;
    std::vector<int> cur = w.top;
    for (const auto& c : w.cols) {
        if (std::holds_alternative<CrossCol>(c)) {
            const auto& x = std::get<CrossCol>(c);
            s += std::min(cur[x.pos - 1], cur[x.pos]);
            std::swap(cur[x.pos - 1], cur[x.pos]);
        } else {
            const auto& r = std::get<RungCol>(c);
            int d = r.dir == RungDir::MoveRight ? r.label : -r.label;
            cur[r.pos - 1] -= d;
            cur[r.pos] += d;
        }
    }
    return s;
}

long slideShift(const LadderWeb& before, const LadderWeb& after) {
    return minColorSumWeb(before) - minColorSumWeb(after);
}

OperatorQ splitOp(int a, int b, int pos, const std::vector<int>& gamma, int N) {
    if (pos < 1 || pos > static_cast<int>(gamma.size()))
        throw IndexError("splitOp: position out of range");
    if (gamma[pos - 1] != a + b) throw BoundaryMismatchError("splitOp: label is not a+b");
    StateSpace dom = StateSpace::make(N, gamma);
    StateSpace localDom = StateSpace::make(N, {a + b});
    StateSpace localCod = StateSpace::make(N, {a, b});
    OperatorQ local(localDom, localCod);
    for (uint64_t c = 0; c < localDom.dim; ++c) {
        uint32_t S = localDom.decode(c)[0];
        // enumerate A <= S with |A| = a via submask walk
        for (uint32_t A = S;; A = (A - 1) & S) {
            if (__builtin_popcount(A) == a) {
                uint32_t B = S & ~A;
                local.addEntry(localCod.encode({A, B}), c, splitCoeff(A, B));
            }
            if (A == 0) break;
        }
    }
    return promote(local, dom, pos - 1);
}

OperatorQ mergeOp(int a, int b, int pos, const std::vector<int>& gamma, int N) {
    if (pos < 1 || pos + 1 > static_cast<int>(gamma.size()))
        throw IndexError("mergeOp: position out of range");
    if (gamma[pos - 1] != a || gamma[pos] != b)
        throw BoundaryMismatchError("mergeOp: labels do not match");
    StateSpace dom = StateSpace::make(N, gamma);
    StateSpace localDom = StateSpace::make(N, {a, b});
    StateSpace localCod = StateSpace::make(N, {a + b});
    OperatorQ local(localDom, localCod);
    for (uint64_t c = 0; c < localDom.dim; ++c) {
        auto masks = localDom.decode(c);
        if (masks[0] & masks[1]) continue;  // repeated index
        local.addEntry(localCod.encode({masks[0] | masks[1]}), c, mergeCoeff(masks[0], masks[1]));
    }
    return promote(local, dom, pos - 1);
}

OperatorQ rungOp(const RungCol& rung, const std::vector<int>& gamma, int N) {
    int pos = rung.pos;
    if (pos < 1 || pos + 1 > static_cast<int>(gamma.size()))
        throw IndexError("rungOp: position out of range");
    int a = gamma[pos - 1], b = gamma[pos], m = rung.label;
    StateSpace dom = StateSpace::make(N, gamma);
    if (m == 0) return OperatorQ::identity(dom);
    if (rung.dir == RungDir::MoveRight) {
        std::vector<int> mid = spliceLabels(gamma, pos, 2, {a - m, m, b});
        if (a - m < 0) return OperatorQ::zero(dom, StateSpace::make(N, spliceLabels(gamma, pos, 2, {a - m, b + m})));
        OperatorQ s = splitOp(a - m, m, pos, gamma, N);
        OperatorQ mg = mergeOp(m, b, pos + 1, mid, N);
        return compose(mg, s);
    }
    std::vector<int> mid = spliceLabels(gamma, pos, 2, {a, m, b - m});
    if (b - m < 0) return OperatorQ::zero(dom, StateSpace::make(N, spliceLabels(gamma, pos, 2, {a + m, b - m})));
    OperatorQ s = splitOp(m, b - m, pos + 1, gamma, N);
    OperatorQ mg = mergeOp(a, m, pos, mid, N);
    return compose(mg, s);
}

std::vector<RungCol> crossingLadderTerm(int pos, int a, int b, int k) {
    if (a >= b) return {{pos, RungDir::MoveRight, (a - b) + k}, {pos, RungDir::MoveLeft, k}};
    return {{pos, RungDir::MoveLeft, (b - a) + k}, {pos, RungDir::MoveRight, k}};
}

namespace {

using CrossingKey = std::tuple<int, int, int, int>;  // a, b, sign, N

/// Two-strand crossing operator on colors (a, b); cached behind a lock so
/// callers may run concurrently.
OperatorQ localCrossingOp(int a, int b, int sign, int N) {
    static std::mutex mu;
    static std::map<CrossingKey, OperatorQ> cache;
    CrossingKey key{a, b, sign, N};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    std::vector<int> topPair{a, b};
    StateSpace dom = StateSpace::make(N, topPair);
    StateSpace cod = StateSpace::make(N, {b, a});
    OperatorQ acc(dom, cod);
    int m = std::min(a, b);
    for (int k = 0; k <= m; ++k) {
        auto rungs = crossingLadderTerm(1, a, b, k);
        std::vector<int> midLabels{topPair};
        {
            int d = rungs[0].dir == RungDir::MoveRight ? rungs[0].label : -rungs[0].label;
            midLabels[0] -= d;
            midLabels[1] += d;
        }
        OperatorQ term = compose(rungOp(rungs[1], midLabels, N), rungOp(rungs[0], topPair, N));
        long h = sign > 0 ? k : m - k;
        long qd = h;
        acc = acc + term.scaled(Laurent::monomial(h % 2 == 0 ? 1 : -1, qd));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(acc)).first->second;
}

}  // namespace

OperatorQ crossingEulerOp(int pos, int sign, const std::vector<int>& gamma, int N) {
    if (pos < 1 || pos + 1 > static_cast<int>(gamma.size()))
        throw IndexError("crossingEulerOp: position out of range");
    int a = gamma[pos - 1], b = gamma[pos];
    StateSpace dom = StateSpace::make(N, gamma);
    if (a < 0 || b < 0 || a > N || b > N) {
        std::vector<int> swapped = gamma;
        std::swap(swapped[pos - 1], swapped[pos]);
        return OperatorQ::zero(dom, StateSpace::make(N, swapped));
    }
    return promote(localCrossingOp(a, b, sign, N), dom, pos - 1);
}

OperatorQ webOp(const LadderWeb& w, int N) {
    StateSpace top = StateSpace::make(N, w.top);
    OperatorQ acc = OperatorQ::identity(top);
    std::vector<int> cur = w.top;
    for (const auto& c : w.cols) {
        OperatorQ colOp;
        if (std::holds_alternative<CrossCol>(c)) {
            const auto& x = std::get<CrossCol>(c);
            colOp = crossingEulerOp(x.pos, x.sign, cur, N);
            std::swap(cur[x.pos - 1], cur[x.pos]);
        } else {
            const auto& r = std::get<RungCol>(c);
            colOp = rungOp(r, cur, N);
            int d = r.dir == RungDir::MoveRight ? r.label : -r.label;
            cur[r.pos - 1] -= d;
            cur[r.pos] += d;
        }
        acc = compose(colOp, acc);
    }
    return acc;
}

OperatorQ braidEulerOp(const BraidWord& b, const Coloring& gamma, int N) {
    return braidEulerOp(b, gamma, N, 0);
}

OperatorQ braidEulerOp(const BraidWord& b, const Coloring& gamma, int N, uint64_t dimLimit) {
    if (gamma.n() != b.n) throw BoundaryMismatchError("braidEulerOp: coloring size");
    StateSpace top = StateSpace::make(N, gamma.labels);
    if (dimLimit > 0 && top.dim > dimLimit)
        throw DimensionLimitError("braidEulerOp: state space exceeds the configured ceiling");
    OperatorQ acc = OperatorQ::identity(top);
    std::vector<int> cur = gamma.labels;
    for (const auto& l : b.letters) {
        acc = compose(crossingEulerOp(l.index, l.sign, cur, N), acc);
        std::swap(cur[l.index - 1], cur[l.index]);
    }
    return acc;
}

WebRelationReport checkDigon(int i, int j, int N) {
    std::vector<int> g{i + j};
    OperatorQ lhs = compose(mergeOp(i, j, 1, {i, j}, N), splitOp(i, j, 1, g, N));
    OperatorQ rhs = OperatorQ::identity(StateSpace::make(N, g)).scaled(Laurent::qBinom(i + j, i));
    return {"digon", {i, j, N}, lhs, rhs, lhs == rhs};
}

WebRelationReport checkSquareSwitch(int i, int j, int k, int ell, int N) {
    std::vector<int> top{i + k, j};
    StateSpace dom = StateSpace::make(N, top);
    std::vector<int> mid1{i + ell, j - ell + k};
    OperatorQ lhs = compose(rungOp({1, RungDir::MoveRight, ell}, mid1, N),
                            rungOp({1, RungDir::MoveLeft, ell - k}, top, N));
    OperatorQ rhs = OperatorQ::zero(dom, StateSpace::make(N, {i, j + k}));
    for (int p = std::max(0, k); p <= ell; ++p) {
        std::vector<int> mid2{i + k - p, j + p};
        OperatorQ term = compose(rungOp({1, RungDir::MoveLeft, p - k}, mid2, N),
                                 rungOp({1, RungDir::MoveRight, p}, top, N));
        rhs = rhs + term.scaled(Laurent::qBinom(j - i, ell - p));
    }
    return {"square-switch", {i, j, k, ell, N}, lhs, rhs, lhs == rhs};
}

}  // namespace webq
