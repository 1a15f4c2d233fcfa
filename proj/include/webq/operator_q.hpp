#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webq/braid.hpp"
#include "webq/laurent.hpp"

namespace webq {

/// Basis bookkeeping for V(gamma) = tensor over strands of Lambda^{gamma_i}(C^N).
/// Basis states are tuples of subsets of {1..N}, one per strand, encoded as
/// bitmasks listed in increasing numeric order. A strand label outside [0, N]
/// has no subsets, so the whole space has dimension zero; this is exactly the
/// zero-web rule in the subset model.
struct StateSpace {
    int N = 0;
    std::vector<int> labels;
    std::vector<std::vector<uint32_t>> strandStates;
    std::vector<uint64_t> suffixDim;  // suffixDim[i] = product of dims of strands > i
    uint64_t dim = 0;

    static StateSpace make(int N, const std::vector<int>& labels);

    std::vector<uint32_t> decode(uint64_t idx) const;
    uint64_t encode(const std::vector<uint32_t>& masks) const;
    bool sameShape(const StateSpace& o) const { return N == o.N && labels == o.labels; }
};

uint64_t binomialCount(int n, int k);

/// Sparse matrix over Z[q,q^-1] between two state spaces, stored by column:
/// cols[c] maps row index to entry. Applying to a basis vector v_c yields
/// sum over rows of entry * v_r.
class OperatorQ {
  public:
    OperatorQ() = default;
    OperatorQ(StateSpace dom, StateSpace cod);

    static OperatorQ identity(const StateSpace& s);
    static OperatorQ zero(StateSpace dom, StateSpace cod) { return OperatorQ(dom, cod); }

    const StateSpace& dom() const { return dom_; }
    const StateSpace& cod() const { return cod_; }

    void addEntry(uint64_t row, uint64_t col, const Laurent& p);
    const std::map<uint64_t, Laurent>& column(uint64_t c) const { return cols_[c]; }

    bool isZero() const;
    bool isIdentity() const;
    uint64_t entryCount() const;
    Laurent entry(uint64_t row, uint64_t col) const;

    OperatorQ operator+(const OperatorQ& o) const;
    OperatorQ operator-(const OperatorQ& o) const;
    OperatorQ scaled(const Laurent& p) const;
    bool operator==(const OperatorQ& o) const;
    bool operator!=(const OperatorQ& o) const { return !(*this == o); }

    /// Drop all monomials with exponent >= cap.
    OperatorQ truncated(long cap) const;

    /// If the operator is c*q^e * identity for a single monomial, return it.
    std::optional<std::pair<mpz_class, long>> asMonomialIdentity() const;

    /// FNV-1a hash of the canonical entry listing, rendered as 16 hex digits.
    std::string digest() const;

    friend OperatorQ compose(const OperatorQ& a, const OperatorQ& b);
    friend OperatorQ composeSerial(const OperatorQ& a, const OperatorQ& b);
    friend OperatorQ kron(const OperatorQ& a, const OperatorQ& b);
    friend std::optional<long> minDiffDeg(const OperatorQ& a, const OperatorQ& b);

  private:
    StateSpace dom_, cod_;
    std::vector<std::map<uint64_t, Laurent>> cols_;
};

/// a after b, parallelized over columns of the right factor. Deterministic:
/// each output column is accumulated independently in a fixed order.
OperatorQ compose(const OperatorQ& a, const OperatorQ& b);

/// Reference implementation of compose; kept for testing and benchmarks.
OperatorQ composeSerial(const OperatorQ& a, const OperatorQ& b);

/// Tensor product on horizontally adjacent strand groups.
OperatorQ kron(const OperatorQ& a, const OperatorQ& b);

/// Minimal q-exponent at which two operators differ; nullopt when equal.
std::optional<long> minDiffDeg(const OperatorQ& a, const OperatorQ& b);

/// Embed an operator acting on strands [pos, pos+k) into the full space
/// `dom`, identity elsewhere. The window of dom must match local.dom().
OperatorQ promote(const OperatorQ& local, const StateSpace& dom, int pos);

}  // namespace webq
