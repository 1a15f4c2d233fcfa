#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "webq/io.hpp"
#include "webq/skeleton.hpp"
#include "webq/stab.hpp"

using namespace webq;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailed = 1;  // a mathematical failure verdict
constexpr int kExitInputError = 2;     // parse errors, bad config, exhausted budgets

struct Common {
    std::string format = "table";
    int threads = 0;
};

void emit(const Common& c, const json& j, const std::string& table) {
    if (c.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << table;
}

/// --word accepts inline letters ("1 2 -1") or a JSON word file path.
bool looksInline(const std::string& s) {
    return s.find_first_not_of("0123456789- \t") == std::string::npos && !s.empty();
}

struct WordArg {
    BraidWord word;
    std::optional<InfiniteBraidWord> infinite;
    std::optional<Coloring> gamma;
    std::optional<CompletenessCertificate> cert;
};

WordArg loadWordArg(const std::string& spec, int n, long truncateAt = 0) {
    WordArg out;
    if (looksInline(spec)) {
        out.word = io::parseWordText(spec, n);
        return out;
    }
    io::WordFile wf = io::infiniteWordFromJson(io::loadJsonFile(spec));
    out.infinite = wf.word;
    out.gamma = wf.gamma;
    out.cert = wf.cert;
    out.word = wf.word.truncation(truncateAt);
    return out;
}

Coloring resolveGamma(const WordArg& arg, const std::string& gammaFlag, int NFlag, int n) {
    std::vector<int> labels;
    int N = NFlag;
    if (!gammaFlag.empty())
        labels = io::parseLabels(gammaFlag);
    else if (arg.gamma)
        labels = arg.gamma->labels;
    else
        throw io::ParseError("no coloring: pass --gamma or use a word file with one");
    if (N == 0 && arg.gamma) N = arg.gamma->N;
    if (N == 0)
        for (int v : labels) N = std::max(N, v);
    if (static_cast<int>(labels.size()) != n)
        throw io::ParseError("coloring length does not match the strand count");
    return Coloring{N, labels};
}

std::string describeDiff(const std::optional<long>& d) {
    return d ? std::to_string(*d) : std::string("inf");
}

std::string stepTable(const StabReport& rep) {
    std::string out = "  ell     m     z     b  qdiff_prev  qdiff_ft  digest\n";
    char buf[160];
    for (const auto& s : rep.steps) {
        std::snprintf(buf, sizeof(buf), "%5ld %5ld %5s %5s  %10s  %8s  %s\n", s.ell, s.m,
                      s.z ? std::to_string(*s.z).c_str() : "-",
                      s.b ? std::to_string(*s.b).c_str() : "-",
                      describeDiff(s.qdiffPrev).c_str(), describeDiff(s.qdiffFt).c_str(),
                      s.digest.c_str());
        out += buf;
    }
    out += "verdict: " + rep.verdict + "\n";
    for (const auto& n : rep.notes) out += "note: " + n + "\n";
    return out;
}

int verdictExit(const std::string& verdict) {
    if (verdict == "Converging" || verdict == "CauchyCertified" || verdict == "Factorized" ||
        verdict == "Verified")
        return kExitOk;
    return kExitVerdictFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decategorified web calculus for colored braids"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--format", common.format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--threads", common.threads, "worker threads (0 = library default)");

    std::string wordSpec, gammaSpec, certPath, fileA, fileB, certAPath, certBPath, blocksSpec;
    int n = 0, N = 0;
    long count = 10, budget = 100000, steps = 5, ell = 1, kPow = 1;
    StabOptions opt;

    auto* cs = app.add_subcommand("cs", "color size of a coloring");
    cs->fallthrough();
    cs->add_option("--gamma", gammaSpec, "labels, e.g. 1,2,3")->required();

    auto* purity = app.add_subcommand("purity", "maximal purity sequence of an infinite word");
    purity->fallthrough();
    purity->add_option("--word", wordSpec, "word file (JSON)")->required();
    purity->add_option("--count", count, "entries to list");

    auto* clasp = app.add_subcommand("clasp", "find a clasp through braid moves");
    clasp->fallthrough();
    clasp->add_option("--word", wordSpec, "positive word, inline or file")->required();
    clasp->add_option("--gamma", gammaSpec, "coloring");
    clasp->add_option("--n", n, "strand count for inline words");
    clasp->add_option("--budget", budget, "search budget (expanded words)");

    auto* certify = app.add_subcommand("certify", "verify a color-completeness certificate");
    certify->fallthrough();
    certify->add_option("--word", wordSpec, "word file (JSON)")->required();
    certify->add_option("--cert", certPath, "certificate file")->required();
    certify->add_option("--budget", budget, "move budget");

    auto* euler = app.add_subcommand("euler", "Euler operator of a colored braid word");
    euler->fallthrough();
    euler->add_option("--word", wordSpec, "word, inline or file")->required();
    euler->add_option("--gamma", gammaSpec, "coloring");
    euler->add_option("--n", n, "strand count for inline words");
    euler->add_option("--N", N, "ambient rank");
    euler->add_option("--truncate", ell, "letters to take from an infinite word");

    auto* skeleton = app.add_subcommand("skeleton", "cone presentation of a color-pure word");
    skeleton->fallthrough();
    skeleton->add_option("--word", wordSpec, "positive word, inline or file")->required();
    skeleton->add_option("--gamma", gammaSpec, "coloring");
    skeleton->add_option("--n", n, "strand count for inline words");
    skeleton->add_option("--N", N, "ambient rank");
    skeleton->add_option("--budget", budget, "clasp search budget");

    auto* bound = app.add_subcommand("bound", "homological-order bound b at a purity step");
    bound->fallthrough();
    bound->add_option("--word", wordSpec, "word file (JSON)")->required();
    bound->add_option("--cert", certPath, "certificate file")->required();
    bound->add_option("--ell", ell, "purity step index")->required();

    auto* projector = app.add_subcommand("projector", "full-twist projector truncation");
    projector->fallthrough();
    projector->add_option("--n", n, "strand count")->required();
    projector->add_option("--gamma", gammaSpec, "coloring")->required();
    projector->add_option("--N", N, "ambient rank")->required();
    projector->add_option("--k", kPow, "twist power");

    auto* stabilize = app.add_subcommand("stabilize", "q-adic stabilization of two systems");
    stabilize->fallthrough();
    stabilize->add_option("--a", fileA, "reference word file")->required();
    stabilize->add_option("--b", fileB, "studied word file")->required();
    stabilize->add_option("--cert-a", certAPath, "certificate for the reference word");
    stabilize->add_option("--cert-b", certBPath, "certificate for the studied word");
    stabilize->add_option("--N", N, "ambient rank");
    stabilize->add_option("--steps", steps, "purity steps to run");
    stabilize->add_option("--precision,-M", opt.precision, "q-adic window");
    stabilize->add_option("--dim-limit", opt.dimLimit, "state-space ceiling");

    auto* bi = app.add_subcommand("bi", "bi-infinite word analysis");
    bi->fallthrough();
    bi->add_option("--word", wordSpec, "bi-infinite word file")->required();
    bi->add_option("--N", N, "ambient rank");
    bi->add_option("--steps", steps, "purity steps per tail");
    bi->add_option("--precision,-M", opt.precision, "q-adic window");
    bi->add_option("--dim-limit", opt.dimLimit, "state-space ceiling");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (common.threads > 0) omp_set_num_threads(common.threads);
#endif

    try {
        if (cs->parsed()) {
            auto labels = io::parseLabels(gammaSpec);
            long v = colorSize(labels);
            emit(common, json{{"colorSize", v}}, std::to_string(v) + "\n");
            return kExitOk;
        }

        if (purity->parsed()) {
            io::WordFile wf = io::infiniteWordFromJson(io::loadJsonFile(wordSpec));
            auto seq = maximalPuritySequence(wf.word, wf.gamma, count);
            std::string table;
            for (long m : seq.entries) table += std::to_string(m) + "\n";
            emit(common, json{{"entries", seq.entries}}, table);
            return kExitOk;
        }

        if (clasp->parsed()) {
            auto arg = loadWordArg(wordSpec, n);
            Coloring gamma = resolveGamma(arg, gammaSpec, N, arg.word.n);
            auto res = findClasp(arg.word, gamma, budget);
            if (!res) {
                emit(common, json{{"found", false}}, "no clasp found within the budget\n");
                return kExitInputError;
            }
            json moves = json::array();
            for (const auto& m : res->moves)
                moves.push_back({{"kind", m.kind == BraidMove::Kind::FarCommute ? "swap" : "triangle"},
                                 {"at", m.at}});
            emit(common,
                 json{{"found", true},
                      {"word", io::wordText(res->word)},
                      {"pos", res->pos},
                      {"moves", moves}},
                 "word: " + io::wordText(res->word) + "\nclasp at: " + std::to_string(res->pos) +
                     "," + std::to_string(res->pos + 1) +
                     "\nmoves: " + std::to_string(res->moves.size()) + "\n");
            return kExitOk;
        }

        if (certify->parsed()) {
            io::WordFile wf = io::infiniteWordFromJson(io::loadJsonFile(wordSpec));
            auto cert = io::certificateFromJson(io::loadJsonFile(certPath));
            CertCheck check;
            try {
                check = verifyCompletenessCertificate(wf.word, wf.gamma, cert, budget);
            } catch (const IntervalNotColorPureError& e) {
                check = {CertVerdict::Mismatch, e.what()};
            } catch (const IncompatibleWithPeriodError& e) {
                check = {CertVerdict::Mismatch, e.what()};
            }
            std::string verdict = check.verdict == CertVerdict::Verified     ? "Verified"
                                  : check.verdict == CertVerdict::Mismatch   ? "Mismatch"
                                                                             : "BudgetExhausted";
            emit(common, json{{"verdict", verdict}, {"detail", check.detail}},
                 "verdict: " + verdict + (check.detail.empty() ? "" : " (" + check.detail + ")") +
                     "\n");
            if (check.verdict == CertVerdict::Verified) return kExitOk;
            return check.verdict == CertVerdict::Mismatch ? kExitVerdictFailed : kExitInputError;
        }

        if (euler->parsed()) {
            auto arg = loadWordArg(wordSpec, n, ell);
            Coloring gamma = resolveGamma(arg, gammaSpec, N, arg.word.n);
            OperatorQ op = braidEulerOp(arg.word, gamma, gamma.N, opt.dimLimit);
            json j = io::operatorJson(op);
            std::string table = "dim: " + std::to_string(op.dom().dim) + " -> " +
                                std::to_string(op.cod().dim) +
                                ", entries: " + std::to_string(op.entryCount()) + "\n";
            for (uint64_t c = 0; c < op.dom().dim; ++c)
                for (const auto& [r, p] : op.column(c))
                    table += "  [" + std::to_string(r) + "," + std::to_string(c) + "] " + p.str() +
                             "\n";
            emit(common, j, table);
            return kExitOk;
        }

        if (skeleton->parsed()) {
            auto arg = loadWordArg(wordSpec, n);
            Coloring gamma = resolveGamma(arg, gammaSpec, N, arg.word.n);
            auto cone = simplifyColorPure(arg.word, gamma, budget);
            json j = io::conePresentationJson(cone);
            std::string table = "identity at h=0; X terms: " + std::to_string(cone.X.terms.size()) +
                                "\n";
            for (const auto& t : cone.X.terms) {
                table += "  h=" + std::to_string(t.h) + " q=" + std::to_string(t.qdeg);
                if (t.witness) {
                    table += " witness=";
                    for (size_t i = 0; i < t.witness->size(); ++i)
                        table += (i ? "," : "") + std::to_string((*t.witness)[i]);
                }
                table += "\n";
            }
            emit(common, j, table);
            return kExitOk;
        }

        if (bound->parsed()) {
            if (ell < 1) throw io::ParseError("--ell must be at least 1");
            io::WordFile wf = io::infiniteWordFromJson(io::loadJsonFile(wordSpec));
            auto cert = io::certificateFromJson(io::loadJsonFile(certPath));
            deleteSubbraids(wf.word, wf.gamma, cert);  // validate
            auto seq = maximalPuritySequence(wf.word, wf.gamma, ell);
            if (static_cast<long>(seq.entries.size()) < ell)
                throw io::ParseError("purity sequence too short");
            long m = seq.entries[ell - 1];
            auto d = deriveDecomposition(wf.word, wf.gamma, cert, m);
            long b = boundB(d);
            emit(common, json{{"ell", ell}, {"m", m}, {"z", d.z}, {"b", b}},
                 "b = " + std::to_string(b) + " (z = " + std::to_string(d.z) + ", m = " +
                     std::to_string(m) + ")\n");
            return kExitOk;
        }

        if (projector->parsed()) {
            auto labels = io::parseLabels(gammaSpec);
            Coloring gamma{N, labels};
            OperatorQ op = projectorTruncation(n, gamma, N, kPow);
            emit(common, io::operatorJson(op),
                 "entries: " + std::to_string(op.entryCount()) + ", digest " + op.digest() + "\n");
            return kExitOk;
        }

        if (stabilize->parsed()) {
            io::WordFile wa = io::infiniteWordFromJson(io::loadJsonFile(fileA));
            io::WordFile wb = io::infiniteWordFromJson(io::loadJsonFile(fileB));
            int rank = N > 0 ? N : wa.gamma.N;
            std::optional<CompletenessCertificate> certA = wa.cert, certB = wb.cert;
            if (!certAPath.empty())
                certA = io::certificateFromJson(io::loadJsonFile(certAPath));
            if (!certBPath.empty())
                certB = io::certificateFromJson(io::loadJsonFile(certBPath));
            InverseSystemSpec specA{wa.word, Coloring{rank, wa.gamma.labels}};
            InverseSystemSpec specB{wb.word, Coloring{rank, wb.gamma.labels}};
            auto rep = webq::stabilize(specA, specB, rank, steps, opt, certA, certB);
            emit(common, io::stabReportJson(rep), stepTable(rep));
            return verdictExit(rep.verdict);
        }

        if (bi->parsed()) {
            auto w = io::biInfiniteFromJson(io::loadJsonFile(wordSpec));
            int rank = N > 0 ? N : w.gammaTop.N;
            w.gammaTop.N = rank;
            auto rep = biInfiniteAnalyze(w, rank, steps, opt);
            emit(common, io::stabReportJson(rep), stepTable(rep));
            return verdictExit(rep.verdict);
        }
    } catch (const io::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ClaspSearchExhaustedError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
