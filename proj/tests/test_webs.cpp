#include <doctest.h>

#include "webq/webs.hpp"

using namespace webq;

namespace {

BraidWord word(int n, std::initializer_list<int> letters) {
    BraidWord w{n, {}};
    for (int v : letters) w.letters.push_back({std::abs(v), v < 0 ? -1 : +1});
    return w;
}

BraidWord io_helpers_word() { return {2, {{1, 1}, {1, 1}}}; }

}  // namespace

TEST_CASE("split and merge basics") {
    // a zero-labeled edge is invisible
    OperatorQ s10 = splitOp(1, 0, 1, {1}, 2);
    CHECK(s10.dom().dim == 2);
    CHECK(s10.cod().dim == 2);
    for (uint64_t c = 0; c < 2; ++c) CHECK(s10.entry(c, c) == Laurent::one());

    // merging a repeated index kills the state
    OperatorQ m11 = mergeOp(1, 1, 1, {1, 1}, 2);
    StateSpace dom = StateSpace::make(2, {1, 1});
    uint64_t v11 = dom.encode({1u, 1u});  // v_1 (x) v_1
    for (uint64_t r = 0; r < m11.cod().dim; ++r) CHECK(m11.entry(r, v11).isZero());

    // a + b above the rank gives the zero operator
    CHECK(mergeOp(2, 2, 1, {2, 2}, 3).isZero());
}

TEST_CASE("digon relation: merge after split is a quantum binomial") {
    for (int N = 1; N <= 4; ++N)
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) {
                auto rep = checkDigon(i, j, N);
                CAPTURE(i);
                CAPTURE(j);
                CAPTURE(N);
                CHECK(rep.equal);
            }
}

TEST_CASE("square switch relation") {
    for (int N = 1; N <= 3; ++N)
        for (int i = 0; i <= N; ++i)
            for (int j = i; j <= N; ++j)
                for (int k = -i; k <= N - j; ++k)
                    for (int ell = std::max(0, k); ell <= N; ++ell) {
                        if (i + k < 0 || i + k > N || j + k < 0 || j + k > N) continue;
                        auto rep = checkSquareSwitch(i, j, k, ell, N);
                        CAPTURE(i);
                        CAPTURE(j);
                        CAPTURE(k);
                        CAPTURE(ell);
                        CAPTURE(N);
                        CHECK(rep.equal);
                    }
}

TEST_CASE("rungs") {
    SUBCASE("label zero is the identity column") {
        OperatorQ r = rungOp({1, RungDir::MoveRight, 0}, {1, 1}, 2);
        CHECK(r.isIdentity());
    }
    SUBCASE("an overfull intermediate label gives zero") {
        // moving 2 onto a strand already colored 1 with N = 2 overflows
        OperatorQ r = rungOp({1, RungDir::MoveRight, 2}, {2, 1}, 2);
        CHECK(r.isZero());
    }
    SUBCASE("draining below zero gives zero") {
        OperatorQ r = rungOp({1, RungDir::MoveLeft, 2}, {1, 1}, 3);
        CHECK(r.isZero());
    }
}

TEST_CASE("crossing Euler operators") {
    SUBCASE("a zero-colored strand crosses trivially") {
        OperatorQ op = crossingEulerOp(1, +1, {0, 2}, 3);
        // single ladder term; the operator permutes the factors with unit coefficient
        CHECK(op.entryCount() == op.dom().dim);
        OperatorQ inv = crossingEulerOp(1, -1, {2, 0}, 3);
        CHECK(compose(inv, op).isIdentity());
    }
    SUBCASE("uni-colored crossing has min+1 = 2 terms worth of support") {
        // i = j = 1, N = 2: chi = id - q * rung; entries on the 4-dim space
        OperatorQ op = crossingEulerOp(1, +1, {1, 1}, 2);
        CHECK(op.dom().dim == 4);
        CHECK_FALSE(op.isZero());
    }
    SUBCASE("positive and negative crossings compose to a monomial") {
        for (int N = 2; N <= 3; ++N)
            for (int a = 0; a <= N; ++a)
                for (int b = 0; b <= N; ++b) {
                    OperatorQ pos = crossingEulerOp(1, +1, {a, b}, N);
                    OperatorQ neg = crossingEulerOp(1, -1, {b, a}, N);
                    OperatorQ prod = compose(neg, pos);
                    auto mono = prod.asMonomialIdentity();
                    if (prod.dom().dim == 0) continue;
                    REQUIRE(mono.has_value());
                    int m = std::min(a, b);
                    CHECK(mono->first == (m % 2 == 0 ? 1 : -1));
                    CHECK(mono->second == m);  // measured q-shift of the R2 move
                }
    }
}

TEST_CASE("crossing operator matches the hand-computed matrix") {
    // colors (1,1), N = 2: on v_i (x) v_j the operator acts by
    //   v1v1 -> v1v1,            v2v2 -> v2v2,
    //   v1v2 -> -q v2v1,         v2v1 -> -q v1v2 + (1 - q^2) v2v1
    OperatorQ op = crossingEulerOp(1, +1, {1, 1}, 2);
    StateSpace s = StateSpace::make(2, {1, 1});
    auto idx = [&](uint32_t a, uint32_t b) { return s.encode({a, b}); };
    uint32_t v1 = 1u, v2 = 2u;
    CHECK(op.entry(idx(v1, v1), idx(v1, v1)) == Laurent::one());
    CHECK(op.entry(idx(v2, v2), idx(v2, v2)) == Laurent::one());
    CHECK(op.entry(idx(v1, v2), idx(v1, v2)).isZero());
    CHECK(op.entry(idx(v2, v1), idx(v1, v2)) == Laurent::monomial(-1, 1));
    CHECK(op.entry(idx(v1, v2), idx(v2, v1)) == Laurent::monomial(-1, 1));
    CHECK(op.entry(idx(v2, v1), idx(v2, v1)) ==
          Laurent::one() + Laurent::monomial(-1, 2));
    CHECK(op.entryCount() == 5);
}

TEST_CASE("braid Euler operators") {
    SUBCASE("empty word is the identity") {
        CHECK(braidEulerOp(word(2, {}), {2, {1, 1}}, 2).isIdentity());
    }
    SUBCASE("multiplicative over concatenation") {
        BraidWord u = word(3, {1, 2});
        BraidWord v = word(3, {2, 1, 1});
        Coloring g{2, {1, 1, 2}};
        Coloring mid = inducedColoring(u, g, u.size());
        OperatorQ lhs = braidEulerOp(u.concat(v), g, 2);
        OperatorQ rhs = compose(braidEulerOp(v, mid, 2), braidEulerOp(u, g, 2));
        CHECK(lhs == rhs);
    }
    SUBCASE("braid relation R3 on three strands") {
        for (int N = 1; N <= 2; ++N)
            for (int a = 0; a <= N; ++a)
                for (int b = 0; b <= N; ++b)
                    for (int c = 0; c <= N; ++c) {
                        Coloring g{N, {a, b, c}};
                        OperatorQ lhs = braidEulerOp(word(3, {1, 2, 1}), g, N);
                        OperatorQ rhs = braidEulerOp(word(3, {2, 1, 2}), g, N);
                        CAPTURE(a);
                        CAPTURE(b);
                        CAPTURE(c);
                        CAPTURE(N);
                        CHECK(lhs == rhs);
                    }
    }
    SUBCASE("far commutation on four strands") {
        Coloring g{2, {1, 1, 2, 1}};
        CHECK(braidEulerOp(word(4, {1, 3}), g, 2) == braidEulerOp(word(4, {3, 1}), g, 2));
    }
    SUBCASE("the full twist is central") {
        Coloring g{2, {1, 2, 1}};
        BraidWord ft = fullTwist(3);
        for (int i = 1; i <= 2; ++i) {
            BraidWord gen = word(3, {i});
            CHECK(braidEulerOp(ft.concat(gen), g, 2) == braidEulerOp(gen.concat(ft), g, 2));
        }
    }
}

TEST_CASE("web operators") {
    SUBCASE("identity web") {
        LadderWeb w = LadderWeb::identityWeb({1, 2});
        CHECK(webOp(w, 2).isIdentity());
    }
    SUBCASE("digon web is a binomial times the identity") {
        // split 2 -> (1,1) then merge back, N = 3
        LadderWeb w{1, {2}, {}};
        // expressed through rungs on two strands: start (2,0), move 1 right, move 1 left
        LadderWeb v{2, {2, 0}, {RungCol{1, RungDir::MoveRight, 1}, RungCol{1, RungDir::MoveLeft, 1}}};
        OperatorQ op = webOp(v, 3);
        auto mono = op.asMonomialIdentity();
        // [2] * id is not a monomial; compare directly instead
        OperatorQ expect = OperatorQ::identity(StateSpace::make(3, {2, 0})).scaled(Laurent::qBinom(2, 1));
        CHECK(op == expect);
        CHECK_FALSE(mono.has_value());
        (void)w;
    }
    SUBCASE("any web through a label above N is zero") {
        LadderWeb v{2, {2, 2}, {RungCol{1, RungDir::MoveRight, 1}, RungCol{1, RungDir::MoveLeft, 1}}};
        CHECK(webOp(v, 2).isZero());  // intermediate (1,3) with N = 2
    }
    SUBCASE("crossing columns match braid operators") {
        LadderWeb v = LadderWeb::fromWord(word(3, {1, 2}), {1, 1, 2});
        CHECK(webOp(v, 2) == braidEulerOp(word(3, {1, 2}), {2, {1, 1, 2}}, 2));
    }
}

TEST_CASE("zero-web absorption") {
    // composing through a zero web annihilates everything
    LadderWeb zero{2, {2, 2}, {RungCol{1, RungDir::MoveRight, 1}, RungCol{1, RungDir::MoveLeft, 1}}};
    OperatorQ z = webOp(zero, 2);
    REQUIRE(z.isZero());
    OperatorQ x = braidEulerOp(io_helpers_word(), {2, {2, 2}}, 2);
    CHECK(compose(z, x).isZero());
    CHECK(compose(x, z).isZero());
    // a crossing against an out-of-range color is zero as well
    CHECK(crossingEulerOp(1, +1, {1, 3}, 2).isZero());
}

TEST_CASE("mirrored square switch for the opposite trapezoid") {
    // trapezoids with the larger color on the left split the same way
    for (int N = 2; N <= 3; ++N)
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b < a; ++b) {
                int d = a - b;
                std::vector<int> top{a, b};
                StateSpace dom = StateSpace::make(N, top);
                OperatorQ lhs = compose(rungOp({1, RungDir::MoveLeft, d}, {a - d, b + d}, N),
                                        rungOp({1, RungDir::MoveRight, d}, top, N));
                OperatorQ rhs = OperatorQ::zero(dom, dom);
                for (int p = 0; p <= d; ++p) {
                    OperatorQ term = compose(rungOp({1, RungDir::MoveRight, p}, {a + p, b - p}, N),
                                             rungOp({1, RungDir::MoveLeft, p}, top, N));
                    rhs = rhs + term.scaled(Laurent::qBinom(d, p));
                }
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(N);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("slide shift bookkeeping") {
    SUBCASE("equal diagrams shift by zero") {
        LadderWeb w = LadderWeb::fromWord(word(3, {1, 2, 1}), {1, 2, 1});
        CHECK(slideShift(w, w) == 0);
    }
    SUBCASE("rung twist through one crossing") {
        // crossing then rung vs rung then crossing; colors (j+k, i-k) -> (i, j)
        int i = 2, j = 1, k = 1;
        LadderWeb before{2, {j + k, i - k},
                         {CrossCol{1, +1}, RungCol{1, RungDir::MoveLeft, k}}};
        LadderWeb after{2, {j + k, i - k},
                        {RungCol{1, RungDir::MoveRight, k}, CrossCol{1, +1}}};
        CHECK(slideShift(before, after) == std::min(i - k, j + k) - std::min(i, j));
        CHECK(slideShift(before, after) == -slideShift(after, before));
    }
    SUBCASE("pulling a full rung past full twists") {
        // FT^ell at gamma, then rungs, versus rungs first, FT^ell at gamma_x
        int ell = 3;
        std::vector<int> gamma{1, 1};
        std::vector<int> gammaX{0, 2};
        BraidWord ft{2, {}};
        for (int t = 0; t < ell; ++t) ft = ft.concat(fullTwist(2));
        LadderWeb before{2, gamma, {}};
        for (const auto& l : ft.letters) before.cols.push_back(CrossCol{l.index, l.sign});
        before.cols.push_back(RungCol{1, RungDir::MoveRight, 1});
        LadderWeb after{2, gamma, {RungCol{1, RungDir::MoveRight, 1}}};
        for (const auto& l : ft.letters) after.cols.push_back(CrossCol{l.index, l.sign});
        long t = slideShift(before, after);
        CHECK(t == 2 * ell * (colorSize(gamma) - colorSize(gammaX)));
    }
}
