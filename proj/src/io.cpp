#include "webq/io.hpp"

#include <fstream>
#include <sstream>

namespace webq::io {

BraidWord parseWordText(const std::string& text, int n) {
    BraidWord w{n, {}};
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        long v;
        try {
            v = std::stol(tok);
        } catch (...) {
            throw ParseError("bad braid letter '" + tok + "'");
        }
        if (v == 0) throw ParseError("braid letters are nonzero signed indices");
        int idx = static_cast<int>(std::labs(v));
        if (n > 0 && idx > n - 1) throw ParseError("letter index exceeds strand count");
        w.letters.push_back({idx, v < 0 ? -1 : +1});
    }
    if (n == 0) {
        int maxIdx = 0;
        for (const auto& l : w.letters) maxIdx = std::max(maxIdx, l.index);
        w.n = maxIdx + 1;
    }
    return w;
}

std::string wordText(const BraidWord& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << ' ';
        os << w.letters[i].sign * w.letters[i].index;
    }
    return os.str();
}

std::vector<int> parseLabels(const std::string& text) {
    std::vector<int> out;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            throw ParseError("bad label '" + tok + "'");
        }
    }
    return out;
}

json laurentJson(const Laurent& p) {
    json j = json::object();
    for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = c.get_str();
    return j;
}

Laurent laurentFromJson(const json& j) {
    Laurent p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        long e = std::stol(it.key());
        mpz_class c(it.value().get<std::string>());
        p += Laurent::monomial(c, e);
    }
    return p;
}

namespace {

json stateJson(const StateSpace& sp, uint64_t idx) {
    json out = json::array();
    for (uint32_t mask : sp.decode(idx)) {
        json strand = json::array();
        for (int v = 1; v <= sp.N; ++v)
            if (mask & (1u << (v - 1))) strand.push_back(v);
        out.push_back(strand);
    }
    return out;
}

json wordLettersJson(const BraidWord& w) {
    json a = json::array();
    for (const auto& l : w.letters) a.push_back(l.sign * l.index);
    return a;
}

BraidWord wordFromLettersJson(const json& j, int n) {
    BraidWord w{n, {}};
    for (const auto& v : j) {
        long x = v.get<long>();
        if (x == 0) throw ParseError("zero braid letter");
        w.letters.push_back({static_cast<int>(std::labs(x)), x < 0 ? -1 : +1});
    }
    return w;
}

}  // namespace

json operatorJson(const OperatorQ& op) {
    json j;
    j["dim"] = json::array({op.dom().dim, op.cod().dim});
    json entries = json::array();
    for (uint64_t c = 0; c < op.dom().dim; ++c)
        for (const auto& [r, p] : op.column(c))
            entries.push_back(json::array({stateJson(op.cod(), r), stateJson(op.dom(), c),
                                           laurentJson(p)}));
    j["entries"] = entries;
    return j;
}

json infiniteWordJson(const InfiniteBraidWord& w, const Coloring& gamma) {
    json j;
    j["n"] = w.n;
    j["N"] = gamma.N;
    j["gamma"] = gamma.labels;
    j["prefix"] = wordLettersJson(w.prefix);
    j["period"] = wordLettersJson(w.period);
    return j;
}

WordFile infiniteWordFromJson(const json& j) {
    try {
        int n = j.at("n").get<int>();
        Coloring gamma{j.at("N").get<int>(), j.at("gamma").get<std::vector<int>>()};
        InfiniteBraidWord w{n, wordFromLettersJson(j.value("prefix", json::array()), n),
                            wordFromLettersJson(j.value("period", json::array()), n)};
        if (gamma.n() != n) throw ParseError("gamma length differs from n");
        WordFile out{w, gamma, std::nullopt};
        if (j.contains("cert") && !j["cert"].is_null())
            out.cert = certificateFromJson(j["cert"]);
        return out;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad word file: ") + e.what());
    }
}

json certificateJson(const CompletenessCertificate& c) {
    json j;
    json head = json::array();
    for (const auto& iv : c.head) head.push_back(json::array({iv.a, iv.b}));
    j["head"] = head;
    if (c.tail) {
        json pat = json::array();
        for (const auto& iv : c.tail->pattern) pat.push_back(json::array({iv.a, iv.b}));
        j["tail"] = {{"start", c.tail->start}, {"stride", c.tail->stride}, {"pattern", pat}};
    }
    return j;
}

CompletenessCertificate certificateFromJson(const json& j) {
    try {
        CompletenessCertificate c;
        for (const auto& iv : j.value("head", json::array()))
            c.head.push_back({iv.at(0).get<long>(), iv.at(1).get<long>()});
        if (j.contains("tail") && !j["tail"].is_null()) {
            CertificateTail t;
            t.start = j["tail"].at("start").get<long>();
            t.stride = j["tail"].at("stride").get<long>();
            for (const auto& iv : j["tail"].value("pattern", json::array()))
                t.pattern.push_back({iv.at(0).get<long>(), iv.at(1).get<long>()});
            c.tail = t;
        }
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad certificate: ") + e.what());
    }
}

namespace {

json webJson(const LadderWeb& w) {
    json cols = json::array();
    for (const auto& c : w.cols) {
        if (std::holds_alternative<RungCol>(c)) {
            const auto& r = std::get<RungCol>(c);
            cols.push_back(json::array(
                {"rung", r.pos, r.dir == RungDir::MoveRight ? "right" : "left", r.label}));
        } else {
            const auto& x = std::get<CrossCol>(c);
            cols.push_back(json::array({"xing", x.pos, x.sign}));
        }
    }
    return cols;
}

json termJson(const SkeletonTerm& t) {
    json j;
    j["h"] = t.h;
    j["q"] = t.qdeg;
    j["web"] = webJson(t.web);
    if (t.identityTag) j["identity"] = true;
    if (t.witness) j["witness"] = *t.witness;
    return j;
}

}  // namespace

json skeletonJson(const ComplexSkeleton& s) {
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back(termJson(t));
    return terms;
}

json conePresentationJson(const ConePresentation& c) {
    json j;
    j["identity"] = termJson(c.identityTerm);
    j["X"] = skeletonJson(c.X);
    json log = json::array();
    for (const auto& e : c.log)
        log.push_back({{"kind", e.kind}, {"letter", e.letter}, {"params", e.params}});
    j["log"] = log;
    return j;
}

json biInfiniteJson(const BiInfiniteWord& w) {
    json j;
    j["n"] = w.n;
    j["N"] = w.gammaTop.N;
    j["gamma"] = w.gammaTop.labels;
    j["core"] = wordLettersJson(w.core);
    j["left"] = {{"prefix", wordLettersJson(w.left.prefix)},
                 {"period", wordLettersJson(w.left.period)}};
    j["right"] = {{"prefix", wordLettersJson(w.right.prefix)},
                  {"period", wordLettersJson(w.right.period)}};
    return j;
}

BiInfiniteWord biInfiniteFromJson(const json& j) {
    try {
        BiInfiniteWord w;
        w.n = j.at("n").get<int>();
        w.gammaTop = {j.at("N").get<int>(), j.at("gamma").get<std::vector<int>>()};
        w.core = wordFromLettersJson(j.at("core"), w.n);
        w.left = {w.n, wordFromLettersJson(j.at("left").value("prefix", json::array()), w.n),
                  wordFromLettersJson(j.at("left").value("period", json::array()), w.n)};
        w.right = {w.n, wordFromLettersJson(j.at("right").value("prefix", json::array()), w.n),
                   wordFromLettersJson(j.at("right").value("period", json::array()), w.n)};
        return w;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad bi-infinite word file: ") + e.what());
    }
}

json stabReportJson(const StabReport& r) {
    json steps = json::array();
    for (const auto& s : r.steps) {
        json js;
        js["ell"] = s.ell;
        js["m"] = s.m;
        js["z"] = s.z ? json(*s.z) : json(nullptr);
        js["b"] = s.b ? json(*s.b) : json(nullptr);
        js["qdiff_prev"] = s.qdiffPrev ? json(*s.qdiffPrev) : json(nullptr);
        js["qdiff_ft"] = s.qdiffFt ? json(*s.qdiffFt) : json(nullptr);
        if (!s.digest.empty()) js["digest"] = s.digest;
        steps.push_back(js);
    }
    json j;
    j["steps"] = steps;
    j["verdict"] = r.verdict;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

json loadJsonFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace webq::io
