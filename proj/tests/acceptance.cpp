// End-to-end acceptance suite. Each check prints one pass/fail line; the
// process exits nonzero if any check fails. Expected values marked "frozen"
// were computed once by the brute-force calibration run in this file's
// --calibrate mode and are asserted exactly thereafter.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "webq/io.hpp"
#include "webq/skeleton.hpp"
#include "webq/stab.hpp"

using namespace webq;
using Clock = std::chrono::steady_clock;

namespace {

bool gCalibrate = false;
int gFailures = 0;

void report(int id, const std::string& name, bool pass, double secs, const std::string& detail) {
    std::ostringstream os;
    os << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name << " (" << secs
       << " s)";
    if (!detail.empty()) os << " — " << detail;
    std::cout << os.str() << "\n";
    if (!pass) ++gFailures;
}

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& body,
               double limitSecs = 0) {
    auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (pass && limitSecs > 0 && secs > limitSecs) {
        pass = false;
        detail += " [exceeded the " + std::to_string(limitSecs) + " s budget]";
    }
    report(id, name, pass, secs, detail);
}

BraidWord word(int n, std::initializer_list<int> letters) {
    BraidWord w{n, {}};
    for (int v : letters) w.letters.push_back({std::abs(v), v < 0 ? -1 : +1});
    return w;
}

std::vector<std::vector<int>> allColorings(int n, int maxLabel) {
    std::vector<std::vector<int>> out;
    std::vector<int> g(n, 0);
    while (true) {
        out.push_back(g);
        int i = 0;
        while (i < n && g[i] == maxLabel) g[i++] = 0;
        if (i == n) break;
        ++g[i];
    }
    return out;
}

// ---- 1. digon relation -----------------------------------------------

bool digonSuite(std::string& detail) {
    long cases = 0;
    for (int N = 1; N <= 4; ++N)
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) {
                if (!checkDigon(i, j, N).equal) {
                    detail = "digon failed at i=" + std::to_string(i) + " j=" + std::to_string(j) +
                             " N=" + std::to_string(N);
                    return false;
                }
                ++cases;
            }
    detail = std::to_string(cases) + " parameter triples, exact";
    return true;
}

// ---- 2. square switch ------------------------------------------------

bool squareSwitchSuite(std::string& detail) {
    long cases = 0;
    for (int N = 1; N <= 3; ++N)
        for (int i = 0; i <= N; ++i)
            for (int j = i; j <= N; ++j)
                for (int k = -i; k <= N - j; ++k) {
                    if (i + k < 0 || i + k > N || j + k < 0 || j + k > N) continue;
                    for (int ell = std::max(0, k); ell <= N; ++ell) {
                        if (!checkSquareSwitch(i, j, k, ell, N).equal) {
                            detail = "square switch failed at (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k) + "," +
                                     std::to_string(ell) + ") N=" + std::to_string(N);
                            return false;
                        }
                        ++cases;
                    }
                }
    detail = std::to_string(cases) + " parameter tuples, exact";
    return true;
}

// ---- 3. braid relations and centrality --------------------------------

bool braidRelationSuite(std::string& detail) {
    long cases = 0;
    for (int N = 1; N <= 3; ++N)
        for (int n = 2; n <= 4; ++n) {
            auto colorings = allColorings(n, N);
            BraidWord ft = fullTwist(n);
            for (const auto& labels : colorings) {
                Coloring g{N, labels};
                // R3 at every admissible position
                for (int i = 1; i + 1 <= n - 1; ++i) {
                    BraidWord lhs{n, {{i, 1}, {i + 1, 1}, {i, 1}}};
                    BraidWord rhs{n, {{i + 1, 1}, {i, 1}, {i + 1, 1}}};
                    if (!(braidEulerOp(lhs, g, N) == braidEulerOp(rhs, g, N))) {
                        detail = "R3 failed, n=" + std::to_string(n) + " N=" + std::to_string(N);
                        return false;
                    }
                    ++cases;
                }
                // far commutation
                for (int i = 1; i <= n - 1; ++i)
                    for (int j = i + 2; j <= n - 1; ++j) {
                        BraidWord lhs{n, {{i, 1}, {j, 1}}};
                        BraidWord rhs{n, {{j, 1}, {i, 1}}};
                        if (!(braidEulerOp(lhs, g, N) == braidEulerOp(rhs, g, N))) {
                            detail = "far commutation failed";
                            return false;
                        }
                        ++cases;
                    }
                // full twist centrality
                for (int i = 1; i <= n - 1; ++i) {
                    BraidWord gen{n, {{i, 1}}};
                    if (!(braidEulerOp(ft.concat(gen), g, N) ==
                          braidEulerOp(gen.concat(ft), g, N))) {
                        detail = "centrality failed, n=" + std::to_string(n) +
                                 " N=" + std::to_string(N);
                        return false;
                    }
                    ++cases;
                }
            }
        }
    detail = std::to_string(cases) + " identities, exact";
    return true;
}

// ---- 4. shift formula --------------------------------------------------

bool shiftFormulaSuite(std::string& detail) {
    long cases = 0;
    for (int n = 1; n <= 5; ++n)
        for (const auto& labels : allColorings(n, 4)) {
            Coloring g{4, labels};
            if (minColorSum(fullTwist(n), g) != 2 * colorSize(g)) {
                detail = "shift formula failed";
                return false;
            }
            ++cases;
        }
    detail = std::to_string(cases) + " colorings, exact";
    return true;
}

// ---- 5. cone presentation contract -------------------------------------

bool conePresentationSuite(std::string& detail) {
    std::mt19937 rng(20240817);
    int found = 0;
    long maxX = 0;
    while (found < 50) {
        int n = 2 + rng() % 2;  // 2 or 3 strands
        int len = 1 + rng() % 10;
        BraidWord b{n, {}};
        for (int t = 0; t < len; ++t) b.letters.push_back({1 + (int)(rng() % (n - 1)), 1});
        std::vector<int> labels(n);
        for (int& v : labels) v = rng() % 4;  // labels <= 3
        Coloring g{3, labels};
        if (!isColorPure(b, g)) continue;
        ++found;
        ConePresentation cone = simplifyColorPure(b, g, 200000);
        long cs = colorSize(g.labels);
        for (const auto& t : cone.X.terms) {
            if (t.h < 0) {
                detail = "negative h in X";
                return false;
            }
            if (!t.witness || colorSize(*t.witness) >= cs) {
                detail = "witness contract violated";
                return false;
            }
        }
        OperatorQ direct = braidEulerOp(b, g, g.N);
        OperatorQ viaCone = OperatorQ::identity(StateSpace::make(g.N, g.labels)) -
                            eulerOfSkeleton(cone.X, g.N);
        if (!(direct == viaCone)) {
            detail = "euler conservation failed on " + io::wordText(b);
            return false;
        }
        maxX = std::max(maxX, (long)cone.X.terms.size());
    }
    detail = "50 random color-pure words, max |X| = " + std::to_string(maxX) + ", exact";
    return true;
}

// ---- 6. the bound b ----------------------------------------------------

bool boundSuite(std::string& detail) {
    for (long z = 0; z <= 8; ++z) {
        TwistDecomposition d{3, 6 * z, z, {}, {}};
        if (boundB(d) != 2 * z) {
            detail = "pure twist bound is not 2z";
            return false;
        }
    }
    // DP against exhaustive enumeration, all decompositions with <= 12 blocks:
    // twist groups z <= 6, insertions r <= 6, gaps at twist boundaries and
    // mid-twist offsets
    std::mt19937 rng(99);
    long cases = 0;
    for (int trial = 0; trial < 400; ++trial) {
        TwistDecomposition d;
        d.n = 2 + rng() % 3;
        long W = (long)d.n * (d.n - 1);
        d.z = 1 + rng() % 6;
        d.twistLetters = d.z * W;
        int r = rng() % 7;
        if (d.z + r + 1 > 12) {
            r = 12 - 1 - (int)d.z;  // keep within twelve blocks
            if (r < 0) r = 0;
        }
        for (int t = 0; t < r; ++t) d.gaps.push_back(rng() % (d.z * W + 1));
        std::sort(d.gaps.begin(), d.gaps.end());
        d.insertionLengths.assign(d.gaps.size(), 1);
        if (boundB(d) != boundBExhaustive(d)) {
            detail = "DP disagrees with enumeration";
            return false;
        }
        ++cases;
    }
    // every decomposition with z <= 4 twists and r <= 3 insertions
    long small = 0;
    for (int n = 2; n <= 3; ++n) {
        long W = static_cast<long>(n) * (n - 1);
        for (long z = 1; z <= 4; ++z)
            for (int r = 0; r <= 3; ++r) {
                std::vector<long> gaps(r, 0);
                while (true) {
                    TwistDecomposition d{n, z * W, z, gaps, std::vector<long>(r, 1)};
                    if (boundB(d) != boundBExhaustive(d)) {
                        detail = "DP disagrees on a small decomposition";
                        return false;
                    }
                    ++small;
                    int i = r - 1;
                    while (i >= 0 && gaps[i] == z * W) --i;
                    if (i < 0) break;
                    long v = ++gaps[i];
                    for (int t = i + 1; t < r; ++t) gaps[t] = v;  // keep sorted
                }
            }
    }
    // the worked example: one insertion between twist 1 and 2 of three twists
    TwistDecomposition ex{2, 6, 3, {2}, {2}};
    if (boundB(ex) != 5) {
        detail = "worked example bound is not 5";
        return false;
    }
    detail = std::to_string(cases) + " randomized and " + std::to_string(small) +
             " exhaustively enumerated decompositions, DP = enumeration";
    return true;
}

// ---- 7. stabilization --------------------------------------------------

// Frozen by the calibration run (--calibrate): minimal differing q-degrees
// D(k) for idempotence and absorption of projector truncations, k = 1..6,
// and the cross-system degrees of (s1^2 s2^2)^inf against FT^inf at equal z.
struct StabExpectations {
    std::vector<long> idem22;    // n=2, gamma=(1,1): min deg of P_k^2 - P_k
    std::vector<long> absorb22;  // n=2: min deg of chi(sigma_1) P_k - P_k
    std::vector<long> idem3;     // n=3, gamma=(1,1,1)
    std::vector<long> absorb3;   // n=3, generator sigma_1
    std::vector<long> cross;     // steps 1..5: (s1^2 s2^2)^3z vs FT^z
};

const StabExpectations kFrozen = {
    {4, 8, 12, 16, 20, 24},   // idem22
    {4, 8, 12, 16, 20, 24},   // absorb22
    {6, 12, 18, 24, 30, 36},  // idem3
    {6, 12, 18, 24, 30, 36},  // absorb3
    {5, 11, 17, 23, 29},      // cross
};

long diffOrInf(const std::optional<long>& d) { return d ? *d : 1000000; }

bool stabilizationSuite(std::string& detail) {
    const int N = 2;
    struct Config {
        int n;
        std::vector<int> gamma;
        const std::vector<long>* idem;
        const std::vector<long>* absorb;
    };
    std::vector<Config> configs = {{2, {1, 1}, &kFrozen.idem22, &kFrozen.absorb22},
                                   {3, {1, 1, 1}, &kFrozen.idem3, &kFrozen.absorb3}};
    std::ostringstream measured;

    for (const auto& cfg : configs) {
        Coloring g{N, cfg.gamma};
        std::vector<long> idem, absorb;
        std::vector<OperatorQ> genOps;
        for (int i = 1; i <= cfg.n - 1; ++i)
            genOps.push_back(braidEulerOp(BraidWord{cfg.n, {{i, 1}}}, g, N));
        for (long k = 1; k <= 6; ++k) {
            OperatorQ pk = projectorTruncation(cfg.n, g, N, k);
            idem.push_back(diffOrInf(minDiffDeg(compose(pk, pk), pk)));
            long worst = diffOrInf(std::nullopt);
            for (const auto& genOp : genOps)
                worst = std::min(worst, diffOrInf(minDiffDeg(compose(pk, genOp), pk)));
            absorb.push_back(worst);
        }
        measured << "n=" << cfg.n << " idem=";
        for (long v : idem) measured << v << ",";
        measured << " absorb=";
        for (long v : absorb) measured << v << ",";
        if (!gCalibrate) {
            if (idem != *cfg.idem || absorb != *cfg.absorb) {
                detail = "measured degrees differ from frozen: " + measured.str();
                return false;
            }
            for (size_t i = 1; i < idem.size(); ++i)
                if (idem[i] < idem[i - 1] + 1 || absorb[i] < absorb[i - 1] + 1) {
                    detail = "degree gain per added twist below 1";
                    return false;
                }
        }
        // uniform gamma = (2,...,2) is one-dimensional and stabilizes trivially
        Coloring g2{N, std::vector<int>(cfg.n, 2)};
        OperatorQ p2 = projectorTruncation(cfg.n, g2, N, 2);
        if (!(compose(p2, p2) == p2)) {
            detail = "top-label projector is not idempotent";
            return false;
        }
    }

    // cross-system: (sigma_1^2 sigma_2^2)^inf against FT^inf at equal z
    InfiniteBraidWord b{3, {3, {}}, word(3, {1, 1, 2, 2})};
    Coloring g{N, {1, 1, 1}};
    CompletenessCertificate certB;
    certB.tail = CertificateTail{0, 4, {{1, 2}, {3, 4}}};
    auto check = verifyCompletenessCertificate(b, g, certB, 100000);
    if (check.verdict != CertVerdict::Verified) {
        detail = "the interleaving certificate should verify";
        return false;
    }
    std::vector<long> cross;
    {
        InverseSystemSpec specA{infiniteFullTwist(3), g};
        InverseSystemSpec specB{b, g, InverseSystemSpec::Kind::Subsequence, {12, 24, 36, 48, 60}};
        StabOptions opt;
        opt.precision = 20;
        auto rep = stabilize(specA, specB, N, 5, opt, CompletenessCertificate{}, certB);
        for (const auto& s : rep.steps) cross.push_back(diffOrInf(s.qdiffFt));
    }
    measured << " cross=";
    for (long v : cross) measured << v << ",";

    if (gCalibrate) {
        detail = "calibration: " + measured.str();
        std::cout << "[calibrate] " << measured.str() << "\n";
        return true;
    }
    if (cross != kFrozen.cross) {
        detail = "cross degrees differ from frozen: " + measured.str();
        return false;
    }
    for (size_t i = 1; i < cross.size(); ++i)
        if (cross[i] < cross[i - 1]) {
            detail = "cross degree decreased";
            return false;
        }
    if (cross.size() < 5 || cross[4] < 8) {
        detail = "cross degree below 8 at step 5";
        return false;
    }
    detail = measured.str();
    return true;
}

// ---- 8. negative crossings ---------------------------------------------

bool negativeCrossingSuite(std::string& detail) {
    const int N = 2;
    long cases = 0;
    for (int n = 2; n <= 3; ++n)
        for (const auto& labels : allColorings(n, 2)) {
            Coloring g{N, labels};
            for (int i = 1; i <= n - 1; ++i)
                for (long k = 0; k <= 2; ++k) {
                    BraidWord pad{n, {{i, -1}, {i, 1}}};
                    BraidWord ftk{n, {}};
                    for (long t = 0; t < k; ++t) ftk = ftk.concat(fullTwist(n));
                    OperatorQ padded = braidEulerOp(pad.concat(ftk), g, N);
                    OperatorQ plain = braidEulerOp(ftk, g, N);
                    long tminus = negativeShift(pad, g);
                    auto mono = braidEulerOp(pad, g, N).asMonomialIdentity();
                    if (plain.dom().dim == 0) continue;
                    if (!mono) {
                        detail = "padding is not a monomial times the identity";
                        return false;
                    }
                    if (mono->first != (tminus % 2 == 0 ? 1 : -1)) {
                        detail = "sign does not match (-1)^{t-}";
                        return false;
                    }
                    if (!(padded == plain.scaled(Laurent::monomial(mono->first, mono->second)))) {
                        detail = "padded truncation is not the predicted multiple";
                        return false;
                    }
                    ++cases;
                }
        }
    detail = std::to_string(cases) + " padded truncations, exact";
    return true;
}

// ---- 9. horizontal splitting and bi-infinite words ----------------------

bool splittingAndBiInfiniteSuite(std::string& detail) {
    // horizontal: alternating sigma_1^2, sigma_3^2 on four strands
    {
        InfiniteBraidWord w{4, {4, {}}, word(4, {1, 1, 3, 3})};
        Coloring g{2, {1, 1, 1, 1}};
        auto rep = horizontalFactorization(w, g, {{1, 2}, {3, 4}}, 2, 4, {12, 20000});
        if (rep.verdict != "Factorized") {
            detail = "horizontal factorization verdict " + rep.verdict;
            return false;
        }
        for (const auto& s : rep.steps)
            if (s.qdiffPrev) {
                detail = "tensor factorization is not exact";
                return false;
            }
    }
    // full-twist blocks per block stabilize toward the block projectors
    {
        BraidWord per = fullTwist(2);
        BraidWord lifted{4, {}};
        for (const auto& l : per.letters) lifted.letters.push_back(l);
        BraidWord lifted2{4, {}};
        for (const auto& l : per.letters) lifted2.letters.push_back({l.index + 2, l.sign});
        InfiniteBraidWord w{4, {4, {}}, lifted.concat(lifted2)};
        Coloring g{2, {1, 1, 1, 1}};
        auto rep = horizontalFactorization(w, g, {{1, 2}, {3, 4}}, 2, 4, {12, 20000});
        if (rep.verdict != "Factorized") {
            detail = "per-block twist factorization verdict " + rep.verdict;
            return false;
        }
    }
    // identity core between FT tails: the limit is the projector truncation
    {
        BiInfiniteWord w;
        w.n = 2;
        w.left = infiniteFullTwist(2);
        w.right = infiniteFullTwist(2);
        w.core = BraidWord{2, {}};
        w.gammaTop = {2, {1, 1}};
        BraidWord last =
            w.left.truncation(14).reversed().concat(w.core).concat(w.right.truncation(14));
        OperatorQ limit = braidEulerOp(last, w.gammaTop, 2);
        OperatorQ p = projectorTruncation(2, {2, {1, 1}}, 2, 7);
        auto d = minDiffDeg(limit, p);
        if (d && *d < 12) {
            detail = "identity-core limit differs from the projector below q^12";
            return false;
        }
    }
    // bi-infinite: FT tails around a small core; digests agree mod q^12
    // after shifting both starting points
    {
        BiInfiniteWord w;
        w.n = 2;
        w.left = infiniteFullTwist(2);
        w.right = infiniteFullTwist(2);
        w.core = word(2, {1});
        w.gammaTop = {2, {1, 1}};
        StabOptions opt;
        opt.precision = 12;
        auto rep = biInfiniteAnalyze(w, 2, 7, opt);
        auto shifted = biInfiniteAnalyze(w.shiftStartingPoints(2, 2), 2, 6, opt);
        if (rep.steps.empty() || shifted.steps.empty()) {
            detail = "bi-infinite runs produced no steps";
            return false;
        }
        if (rep.steps.back().digest != shifted.steps.back().digest) {
            detail = "starting-point shift changed the digest mod q^12";
            return false;
        }
        // the absorbed-core limit agrees with the plain projector truncation
        OperatorQ p = projectorTruncation(2, {2, {1, 1}}, 2, 7);
        BraidWord wordLast =
            w.left.truncation(14).reversed().concat(w.core).concat(w.right.truncation(14));
        OperatorQ last = braidEulerOp(wordLast, w.gammaTop, 2);
        auto d = minDiffDeg(last, p);
        if (d && *d < 12) {
            detail = "absorption digest differs below q^12";
            return false;
        }
    }
    detail = "exact factorization; shift-invariant digests mod q^12";
    return true;
}

// ---- 10. certificate rejection ------------------------------------------

bool rejectionSuite(std::string& detail) {
    InfiniteBraidWord w{3, {3, {}}, word(3, {1, 1, 2, 2})};
    Coloring g{3, {1, 2, 3}};
    CompletenessCertificate cert;
    cert.tail = CertificateTail{0, 4, {{2, 4}}};
    auto check = verifyCompletenessCertificate(w, g, cert, 100000);
    if (check.verdict != CertVerdict::Mismatch) {
        detail = "expected a definite mismatch, got " +
                 std::string(check.verdict == CertVerdict::Verified ? "Verified" : "BudgetExhausted");
        return false;
    }
    detail = "definite mismatch: " + check.detail;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    gCalibrate = argc > 1 && std::strcmp(argv[1], "--calibrate") == 0;

    criterion(1, "digon relation equals the quantum binomial", digonSuite, 10);
    criterion(2, "square switch relation", squareSwitchSuite, 60);
    criterion(3, "braid relations and full-twist centrality", braidRelationSuite, 120);
    criterion(4, "full-twist color sum equals twice the color size", shiftFormulaSuite);
    criterion(5, "cone presentation contract on random color-pure words", conePresentationSuite);
    criterion(6, "homological-order bound: 2z and DP = enumeration", boundSuite);
    criterion(7, "projector stabilization and cross-system convergence", stabilizationSuite, 600);
    criterion(8, "negative crossings shift by a single monomial", negativeCrossingSuite);
    criterion(9, "horizontal splitting and bi-infinite digests", splittingAndBiInfiniteSuite);
    criterion(10, "non-color-complete certificate is definitively rejected", rejectionSuite);

    if (gFailures) {
        std::cout << gFailures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
