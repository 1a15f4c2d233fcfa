#include "webq/operator_q.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace webq {

uint64_t binomialCount(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    uint64_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

StateSpace StateSpace::make(int N, const std::vector<int>& labels) {
    if (N < 0 || N > 20) throw IndexError("StateSpace: ambient rank out of range");
    StateSpace s;
    s.N = N;
    s.labels = labels;
    s.strandStates.resize(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        int k = labels[i];
        if (k < 0 || k > N) continue;  // no states: dimension zero
        for (uint32_t m = 0; m < (1u << N); ++m)
            if (__builtin_popcount(m) == k) s.strandStates[i].push_back(m);
    }
    s.suffixDim.assign(labels.size() + 1, 1);
    for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i)
        s.suffixDim[i] = s.suffixDim[i + 1] * s.strandStates[i].size();
    s.dim = labels.empty() ? 1 : s.suffixDim[0];
    return s;
}

std::vector<uint32_t> StateSpace::decode(uint64_t idx) const {
    std::vector<uint32_t> masks(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        uint64_t d = suffixDim[i + 1];
        uint64_t rank = idx / d;
        idx %= d;
        masks[i] = strandStates[i][rank];
    }
    return masks;
}

uint64_t StateSpace::encode(const std::vector<uint32_t>& masks) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
        const auto& states = strandStates[i];
        auto it = std::lower_bound(states.begin(), states.end(), masks[i]);
        idx += static_cast<uint64_t>(it - states.begin()) * suffixDim[i + 1];
    }
    return idx;
}

OperatorQ::OperatorQ(StateSpace dom, StateSpace cod)
    : dom_(std::move(dom)), cod_(std::move(cod)), cols_(dom_.dim) {}

OperatorQ OperatorQ::identity(const StateSpace& s) {
    OperatorQ r(s, s);
    for (uint64_t c = 0; c < s.dim; ++c) r.cols_[c].emplace(c, Laurent::one());
    return r;
}

void OperatorQ::addEntry(uint64_t row, uint64_t col, const Laurent& p) {
    if (p.isZero()) return;
    auto& cell = cols_[col][row];
    cell += p;
    if (cell.isZero()) cols_[col].erase(row);
}

bool OperatorQ::isZero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

bool OperatorQ::isIdentity() const {
    if (!dom_.sameShape(cod_)) return false;
    for (uint64_t c = 0; c < dom_.dim; ++c) {
        if (cols_[c].size() != 1) return false;
        const auto& [r, p] = *cols_[c].begin();
        if (r != c || p != Laurent::one()) return false;
    }
    return true;
}

uint64_t OperatorQ::entryCount() const {
    uint64_t k = 0;
    for (const auto& c : cols_) k += c.size();
    return k;
}

Laurent OperatorQ::entry(uint64_t row, uint64_t col) const {
    auto it = cols_[col].find(row);
    return it == cols_[col].end() ? Laurent() : it->second;
}

OperatorQ OperatorQ::operator+(const OperatorQ& o) const {
    if (!dom_.sameShape(o.dom_) || !cod_.sameShape(o.cod_))
        throw BoundaryMismatchError("operator sum: shapes differ");
    OperatorQ r = *this;
    for (uint64_t c = 0; c < dom_.dim; ++c)
        for (const auto& [row, p] : o.cols_[c]) r.addEntry(row, c, p);
    return r;
}

OperatorQ OperatorQ::operator-(const OperatorQ& o) const {
    if (!dom_.sameShape(o.dom_) || !cod_.sameShape(o.cod_))
        throw BoundaryMismatchError("operator difference: shapes differ");
    OperatorQ r = *this;
    for (uint64_t c = 0; c < dom_.dim; ++c)
        for (const auto& [row, p] : o.cols_[c]) r.addEntry(row, c, -p);
    return r;
}

OperatorQ OperatorQ::scaled(const Laurent& p) const {
    OperatorQ r(dom_, cod_);
    if (p.isZero()) return r;
    for (uint64_t c = 0; c < dom_.dim; ++c)
        for (const auto& [row, e] : cols_[c]) r.cols_[c].emplace(row, e * p);
    return r;
}

bool OperatorQ::operator==(const OperatorQ& o) const {
    if (!dom_.sameShape(o.dom_) || !cod_.sameShape(o.cod_)) return false;
    return cols_ == o.cols_;
}

OperatorQ OperatorQ::truncated(long cap) const {
    OperatorQ r(dom_, cod_);
    for (uint64_t c = 0; c < dom_.dim; ++c)
        for (const auto& [row, p] : cols_[c]) {
            Laurent t = p.truncated(cap);
            if (!t.isZero()) r.cols_[c].emplace(row, std::move(t));
        }
    return r;
}

std::optional<std::pair<mpz_class, long>> OperatorQ::asMonomialIdentity() const {
    if (!dom_.sameShape(cod_)) return std::nullopt;
    if (dom_.dim == 0) return std::nullopt;
    std::optional<std::pair<mpz_class, long>> found;
    for (uint64_t c = 0; c < dom_.dim; ++c) {
        if (cols_[c].size() != 1) return std::nullopt;
        const auto& [r, p] = *cols_[c].begin();
        if (r != c || p.terms().size() != 1) return std::nullopt;
        auto [e, coef] = *p.terms().begin();
        if (!found)
            found = {coef, e};
        else if (found->first != coef || found->second != e)
            return std::nullopt;
    }
    return found;
}

std::string OperatorQ::digest() const {
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    for (uint64_t c = 0; c < dom_.dim; ++c)
        for (const auto& [row, p] : cols_[c]) {
            mix(std::to_string(c));
            mix(":");
            mix(std::to_string(row));
            for (const auto& [e, coef] : p.terms()) {
                mix("|");
                mix(std::to_string(e));
                mix("^");
                mix(coef.get_str());
            }
            mix(";");
        }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

namespace {

void composeColumn(const OperatorQ& a, const OperatorQ& b, uint64_t c,
                   std::map<uint64_t, Laurent>& out) {
    for (const auto& [k, p] : b.column(c)) {
        for (const auto& [r, p2] : a.column(k)) {
            auto& cell = out[r];
            cell += p2 * p;
            if (cell.isZero()) out.erase(r);
        }
    }
}

}  // namespace

OperatorQ compose(const OperatorQ& a, const OperatorQ& b) {
    if (!a.dom_.sameShape(b.cod_)) throw BoundaryMismatchError("compose: inner shapes differ");
    OperatorQ r(b.dom_, a.cod_);
    const int64_t n = static_cast<int64_t>(b.dom_.dim);
#pragma omp parallel for schedule(dynamic, 8)
    for (int64_t c = 0; c < n; ++c) composeColumn(a, b, c, r.cols_[c]);
    return r;
}

OperatorQ composeSerial(const OperatorQ& a, const OperatorQ& b) {
    if (!a.dom_.sameShape(b.cod_)) throw BoundaryMismatchError("compose: inner shapes differ");
    OperatorQ r(b.dom_, a.cod_);
    for (uint64_t c = 0; c < b.dom_.dim; ++c) composeColumn(a, b, c, r.cols_[c]);
    return r;
}

OperatorQ kron(const OperatorQ& a, const OperatorQ& b) {
    if (a.dom_.N != b.dom_.N) throw BoundaryMismatchError("kron: ambient ranks differ");
    auto joinLabels = [](const std::vector<int>& x, const std::vector<int>& y) {
        std::vector<int> r = x;
        r.insert(r.end(), y.begin(), y.end());
        return r;
    };
    StateSpace dom = StateSpace::make(a.dom_.N, joinLabels(a.dom_.labels, b.dom_.labels));
    StateSpace cod = StateSpace::make(a.cod_.N, joinLabels(a.cod_.labels, b.cod_.labels));
    OperatorQ r(dom, cod);
    for (uint64_t ca = 0; ca < a.dom_.dim; ++ca)
        for (const auto& [ra, pa] : a.cols_[ca])
            for (uint64_t cb = 0; cb < b.dom_.dim; ++cb)
                for (const auto& [rb, pb] : b.cols_[cb])
                    r.addEntry(ra * b.cod_.dim + rb, ca * b.dom_.dim + cb, pa * pb);
    return r;
}

std::optional<long> minDiffDeg(const OperatorQ& a, const OperatorQ& b) {
    if (!a.dom_.sameShape(b.dom_) || !a.cod_.sameShape(b.cod_))
        throw BoundaryMismatchError("minDiffDeg: shapes differ");
    std::optional<long> best;
    for (uint64_t c = 0; c < a.dom_.dim; ++c) {
        auto itA = a.cols_[c].begin();
        auto itB = b.cols_[c].begin();
        auto consider = [&best](const Laurent& d) {
            auto e = d.minExp();
            if (e && (!best || *e < *best)) best = *e;
        };
        while (itA != a.cols_[c].end() || itB != b.cols_[c].end()) {
            if (itB == b.cols_[c].end() || (itA != a.cols_[c].end() && itA->first < itB->first)) {
                consider(itA->second);
                ++itA;
            } else if (itA == a.cols_[c].end() || itB->first < itA->first) {
                consider(-itB->second);
                ++itB;
            } else {
                consider(itA->second - itB->second);
                ++itA;
                ++itB;
            }
        }
    }
    return best;
}

OperatorQ promote(const OperatorQ& local, const StateSpace& dom, int pos) {
    const int kd = static_cast<int>(local.dom().labels.size());
    if (pos < 0 || pos + kd > static_cast<int>(dom.labels.size()))
        throw IndexError("promote: window out of range");
    for (int i = 0; i < kd; ++i)
        if (dom.labels[pos + i] != local.dom().labels[i])
            throw BoundaryMismatchError("promote: window labels disagree");

    // The window may change strand count (a split or merge does).
    std::vector<int> codLabels(dom.labels.begin(), dom.labels.begin() + pos);
    codLabels.insert(codLabels.end(), local.cod().labels.begin(), local.cod().labels.end());
    codLabels.insert(codLabels.end(), dom.labels.begin() + pos + kd, dom.labels.end());
    StateSpace cod = StateSpace::make(dom.N, codLabels);

    uint64_t preDim = 1, postDim = 1;
    for (int i = 0; i < pos; ++i) preDim *= dom.strandStates[i].size();
    for (size_t i = pos + kd; i < dom.labels.size(); ++i) postDim *= dom.strandStates[i].size();

    OperatorQ r(dom, cod);
    uint64_t midDom = local.dom().dim, midCod = local.cod().dim;
    for (uint64_t pre = 0; pre < preDim; ++pre)
        for (uint64_t c = 0; c < midDom; ++c) {
            const auto& colEntries = local.column(c);
            if (colEntries.empty()) continue;
            for (uint64_t post = 0; post < postDim; ++post) {
                uint64_t fullCol = (pre * midDom + c) * postDim + post;
                for (const auto& [row, p] : colEntries) {
                    uint64_t fullRow = (pre * midCod + row) * postDim + post;
                    r.addEntry(fullRow, fullCol, p);
                }
            }
        }
    return r;
}

}  // namespace webq
