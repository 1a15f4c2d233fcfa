#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

namespace webq {

/// Laurent polynomial in q with arbitrary-precision integer coefficients.
/// The zero coefficient is never stored, so the empty map is the zero
/// polynomial and equality is plain map equality.
class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(long constant);
    explicit Laurent(const mpz_class& constant);

    static Laurent monomial(mpz_class coeff, long exp);
    static Laurent one() { return Laurent(1); }

    bool isZero() const { return coeffs_.empty(); }
    std::optional<long> minExp() const;
    std::optional<long> maxExp() const;
    mpz_class coeff(long exp) const;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator-() const;
    bool operator==(const Laurent& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    Laurent scaled(const mpz_class& c) const;
    /// Multiply by q^e.
    Laurent shifted(long e) const;
    /// The bar involution q -> q^{-1}.
    Laurent bar() const;
    /// Drop all terms with exponent >= cap (reduction mod q^cap).
    Laurent truncated(long cap) const;

    const std::map<long, mpz_class>& terms() const { return coeffs_; }

    std::string str() const;

    static Laurent qInt(long n);
    static Laurent qFact(long n);
    static Laurent qBinom(long n, long k);

  private:
    std::map<long, mpz_class> coeffs_;
    void addTerm(long exp, const mpz_class& c);
};

}  // namespace webq
