#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace stf {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// (-1)!! = 1 by convention, so odd-exponent bookkeeping stays uniform.
inline BigInt double_factorial(int n) {
    if (n < -1) throw std::invalid_argument("double_factorial: argument < -1");
    BigInt r = 1;
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1); // always divides: r is a running binomial
    }
    return r;
}

/// Number of distinct permutations of the multiset described by an
/// exponent tuple: (sum e_i)! / prod(e_i!). Single source of truth for
/// the contraction weights used throughout the tensor algebra.
inline BigInt multiset_multiplicity(std::span<const int> exps) {
    int total = 0;
    for (int e : exps) {
        if (e < 0) throw std::invalid_argument("multiset_multiplicity: negative exponent");
        total += e;
    }
    BigInt r = factorial(total);
    for (int e : exps) r /= factorial(e);
    return r;
}

/// Ways to choose a sub-multiset with exponents `sub` out of one with
/// exponents `whole`: prod C(whole_i, sub_i).
inline BigInt embedding_count(std::span<const int> sub, std::span<const int> whole) {
    if (sub.size() != whole.size())
        throw std::invalid_argument("embedding_count: dimension mismatch");
    BigInt r = 1;
    for (std::size_t i = 0; i < sub.size(); ++i) r *= binomial(whole[i], sub[i]);
    return r;
}

// --- Compact multiset indexing -------------------------------------------
//
// Symmetric rank-l tensors over n dimensions are stored by exponent tuple
// (e_1,...,e_n) with sum e_i = l. Tuples are ordered with e_1 descending,
// then e_2 descending, and so on; for n = 3 this matches the sorted index
// strings xx, xy, xz, yy, yz, zz.

inline std::int64_t multiset_count(int rank, int dim) {
    if (rank < 0 || dim < 1) throw std::invalid_argument("multiset_count: bad rank/dim");
    BigInt c = binomial(rank + dim - 1, dim - 1);
    return c.convert_to<std::int64_t>();
}

inline std::int64_t multiset_rank(std::span<const int> exps, int rank) {
    const int dim = static_cast<int>(exps.size());
    std::int64_t r = 0;
    int remaining = rank;
    for (int i = 0; i < dim - 1; ++i) {
        if (exps[i] < 0 || exps[i] > remaining)
            throw std::invalid_argument("multiset_rank: exponents inconsistent with rank");
        for (int v = remaining; v > exps[i]; --v)
            r += multiset_count(remaining - v, dim - i - 1);
        remaining -= exps[i];
    }
    if (exps[dim - 1] != remaining)
        throw std::invalid_argument("multiset_rank: exponents do not sum to rank");
    return r;
}

inline std::vector<int> multiset_unrank(std::int64_t index, int rank, int dim) {
    std::vector<int> exps(dim, 0);
    int remaining = rank;
    for (int i = 0; i < dim - 1; ++i) {
        int v = remaining;
        for (; v >= 0; --v) {
            std::int64_t block = multiset_count(remaining - v, dim - i - 1);
            if (index < block) break;
            index -= block;
        }
        if (v < 0) throw std::out_of_range("multiset_unrank: index out of range");
        exps[i] = v;
        remaining -= v;
    }
    exps[dim - 1] = remaining;
    return exps;
}

/// All exponent tuples of the given rank in storage order.
inline std::vector<std::vector<int>> enumerate_multisets(int rank, int dim) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(multiset_count(rank, dim)));
    std::vector<int> cur(dim, 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == dim - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, rank);
    return out;
}

/// Exponent tuple of a full index tuple (values in 0..dim-1).
inline std::vector<int> exponents_of_indices(std::span<const int> indices, int dim) {
    std::vector<int> exps(dim, 0);
    for (int ix : indices) {
        if (ix < 0 || ix >= dim) throw std::invalid_argument("index out of range");
        ++exps[ix];
    }
    return exps;
}

} // namespace stf
