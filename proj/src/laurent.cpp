#include "webq/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace webq {

Laurent::Laurent(long constant) {
    if (constant != 0) coeffs_[0] = constant;
}

Laurent::Laurent(const mpz_class& constant) {
    if (constant != 0) coeffs_[0] = constant;
}

Laurent Laurent::monomial(mpz_class coeff, long exp) {
    Laurent p;
    if (coeff != 0) p.coeffs_[exp] = std::move(coeff);
    return p;
}

std::optional<long> Laurent::minExp() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

std::optional<long> Laurent::maxExp() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.rbegin()->first;
}

mpz_class Laurent::coeff(long exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? mpz_class(0) : it->second;
}

void Laurent::addTerm(long exp, const mpz_class& c) {
    if (c == 0) return;
    auto it = coeffs_.find(exp);
    if (it == coeffs_.end()) {
        coeffs_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Laurent& Laurent::operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.coeffs_) addTerm(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.coeffs_) addTerm(e, -c);
    return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent r = *this;
    r -= o;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) r.addTerm(e1 + e2, c1 * c2);
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

Laurent Laurent::scaled(const mpz_class& c) const {
    Laurent r;
    if (c == 0) return r;
    for (const auto& [e, k] : coeffs_) r.coeffs_[e] = k * c;
    return r;
}

Laurent Laurent::shifted(long e) const {
    Laurent r;
    for (const auto& [e0, c] : coeffs_) r.coeffs_[e0 + e] = c;
    return r;
}

Laurent Laurent::bar() const {
    Laurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
    return r;
}

Laurent Laurent::truncated(long cap) const {
    Laurent r;
    for (const auto& [e, c] : coeffs_) {
        if (e < cap) r.coeffs_[e] = c;
    }
    return r;
}

std::string Laurent::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest power first, the way quantum integers are usually written
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        mpz_class c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else if (c < 0) {
            os << " - ";
            c = -c;
        } else {
            os << " + ";
        }
        long e = it->first;
        if (e == 0) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

Laurent Laurent::qInt(long n) {
    if (n < 0) throw std::invalid_argument("qInt: negative argument");
    Laurent r;
    for (long e = -(n - 1); e <= n - 1; e += 2) r.coeffs_[e] = 1;
    return r;
}

Laurent Laurent::qFact(long n) {
    if (n < 0) throw std::invalid_argument("qFact: negative argument");
    Laurent r = one();
    for (long k = 2; k <= n; ++k) r = r * qInt(k);
    return r;
}

Laurent Laurent::qBinom(long n, long k) {
    if (k < 0 || k > n) return Laurent();
    // balanced recurrence [n,k] = q^k [n-1,k] + q^{k-n} [n-1,k-1]
    if (k == 0 || k == n) return one();
    return qBinom(n - 1, k).shifted(k) + qBinom(n - 1, k - 1).shifted(k - n);
}

}  // namespace webq
