#pragma once

#include "stf/combinatorics.hpp"
#include "stf/exact.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stf {

/// Fully symmetric rank-l tensor over `dim` dimensions, stored compactly by
/// exponent multiset: the component for any full index tuple is looked up
/// through the tuple's letter counts, so symmetry is structural rather than
/// an invariant that has to be checked entry by entry. Storage size is
/// C(l+dim-1, dim-1); (l+1)(l+2)/2 for dim = 3.
///
/// Values are immutable in spirit: every operation below is a pure function
/// returning a fresh tensor, so instances can be shared across threads.
template <class S>
class SymTensor {
public:
    SymTensor() : SymTensor(0, 3) {}
    SymTensor(int rank, int dim = 3)
        : rank_(rank), dim_(dim),
          comp_(static_cast<std::size_t>(multiset_count(rank, dim))) {
        if (rank < 0) throw std::invalid_argument("SymTensor: negative rank");
        if (dim < 1) throw std::invalid_argument("SymTensor: dimension < 1");
    }

    int rank() const { return rank_; }
    int dim() const { return dim_; }
    std::size_t size() const { return comp_.size(); }

    const S& operator[](std::size_t i) const { return comp_[i]; }
    S& operator[](std::size_t i) { return comp_[i]; }

    const S& at_exps(std::span<const int> exps) const {
        return comp_[static_cast<std::size_t>(multiset_rank(exps, rank_))];
    }
    S& at_exps(std::span<const int> exps) {
        return comp_[static_cast<std::size_t>(multiset_rank(exps, rank_))];
    }
    const S& at_exps(std::initializer_list<int> exps) const {
        return at_exps(std::span<const int>(exps.begin(), exps.size()));
    }
    S& at_exps(std::initializer_list<int> exps) {
        return at_exps(std::span<const int>(exps.begin(), exps.size()));
    }

    /// Read via a full index tuple (values 0..dim-1); any ordering maps to
    /// the same stored component.
    const S& at_indices(std::span<const int> indices) const {
        if (static_cast<int>(indices.size()) != rank_)
            throw std::invalid_argument("SymTensor: index tuple length != rank");
        auto e = exponents_of_indices(indices, dim_);
        return at_exps(e);
    }
    const S& at_indices(std::initializer_list<int> indices) const {
        return at_indices(std::span<const int>(indices.begin(), indices.size()));
    }

    std::vector<std::vector<int>> exponent_list() const {
        return enumerate_multisets(rank_, dim_);
    }

    bool is_zero() const {
        for (const auto& c : comp_)
            if (!scalar_is_zero(c)) return false;
        return true;
    }

    SymTensor operator-() const {
        SymTensor r(rank_, dim_);
        for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = -comp_[i];
        return r;
    }
    SymTensor& operator+=(const SymTensor& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
        return *this;
    }
    SymTensor& operator-=(const SymTensor& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
        return *this;
    }
    friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
    friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }

    SymTensor scaled(const S& f) const {
        SymTensor r(rank_, dim_);
        for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = comp_[i] * f;
        return r;
    }
    SymTensor scaled_exact(const Exact& f) const { return scaled(from_exact<S>(f)); }

    friend bool operator==(const SymTensor& a, const SymTensor& b) {
        return a.rank_ == b.rank_ && a.dim_ == b.dim_ && a.comp_ == b.comp_;
    }

private:
    void require_same_shape(const SymTensor& o) const {
        if (rank_ != o.rank_ || dim_ != o.dim_)
            throw std::invalid_argument("SymTensor: shape mismatch");
    }

    int rank_;
    int dim_;
    std::vector<S> comp_;
};

/// Average of a general (not necessarily symmetric) tensor over all index
/// permutations. The input is a sparse map from full index tuples to values;
/// missing tuples are zero. Idempotent on already-symmetric input.
template <class S>
SymTensor<S> symmetrize(const std::map<std::vector<int>, S>& full, int rank, int dim = 3) {
    SymTensor<S> out(rank, dim);
    for (const auto& [indices, value] : full) {
        if (static_cast<int>(indices.size()) != rank)
            throw std::invalid_argument("symmetrize: index tuple length != declared rank");
        auto e = exponents_of_indices(indices, dim);
        // each distinct ordering of the multiset contributes value/multiplicity
        S w = value * from_exact<S>(Exact(Rational(1, 1)) / Exact(multiset_multiplicity(e)));
        out.at_exps(e) += w;
    }
    return out;
}

/// Contraction over one index pair. For symmetric storage the result does
/// not depend on which pair is chosen; the positions are validated only.
template <class S>
SymTensor<S> trace(const SymTensor<S>& t, int pos_a = 0, int pos_b = 1) {
    const int l = t.rank();
    if (l < 2) throw std::invalid_argument("trace: rank must be >= 2");
    if (pos_a == pos_b || pos_a < 0 || pos_b < 0 || pos_a >= l || pos_b >= l)
        throw std::invalid_argument("trace: invalid index positions");
    SymTensor<S> out(l - 2, t.dim());
    for (auto& e : out.exponent_list()) {
        S acc{};
        for (int a = 0; a < t.dim(); ++a) {
            e[a] += 2;
            acc += t.at_exps(e);
            e[a] -= 2;
        }
        out.at_exps(e) = acc;
    }
    return out;
}

template <class S>
SymTensor<S> trace_k(SymTensor<S> t, int k) {
    for (int i = 0; i < k; ++i) t = trace(t);
    return t;
}

/// Normalized symmetrized outer product: the average of A (x) B over all
/// interleavings. In exponent coordinates this is a weighted convolution,
/// with weights from embedding_count / C(p+q, p).
template <class S>
SymTensor<S> sym_outer(const SymTensor<S>& a, const SymTensor<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sym_outer: dimension mismatch");
    const int p = a.rank(), q = b.rank();
    SymTensor<S> out(p + q, a.dim());
    const Exact norm = Exact(1) / exact_binomial(p + q, p);
    auto outs = out.exponent_list();
    std::vector<int> rest(a.dim());
    for (const auto& e : outs) {
        S acc{};
        for (const auto& f : enumerate_multisets(p, a.dim())) {
            bool feasible = true;
            for (int i = 0; i < a.dim(); ++i) {
                rest[i] = e[i] - f[i];
                if (rest[i] < 0) { feasible = false; break; }
            }
            if (!feasible) continue;
            Exact w = Exact(embedding_count(f, e)) * norm;
            acc += a.at_exps(f) * b.at_exps(rest) * from_exact<S>(w);
        }
        out.at_exps(e) = acc;
    }
    return out;
}

/// Full contraction of two equal-rank tensors: sum over all index tuples,
/// i.e. sum over multisets weighted by their multiplicities.
template <class S>
S contract_full(const SymTensor<S>& a, const SymTensor<S>& b) {
    if (a.rank() != b.rank() || a.dim() != b.dim())
        throw std::invalid_argument("contract_full: rank/dimension mismatch");
    S acc{};
    const auto exps = a.exponent_list();
    for (std::size_t i = 0; i < exps.size(); ++i)
        acc += a[i] * b[i] * from_exact<S>(Exact(multiset_multiplicity(exps[i])));
    return acc;
}

/// Contract all indices of B (rank q) into the trailing q slots of A
/// (rank p+q), leaving a rank-p tensor.
template <class S>
SymTensor<S> contract_partial(const SymTensor<S>& a, const SymTensor<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("contract_partial: dimension mismatch");
    const int q = b.rank(), p = a.rank() - q;
    if (p < 0) throw std::invalid_argument("contract_partial: second rank exceeds first");
    SymTensor<S> out(p, a.dim());
    std::vector<int> joint(a.dim());
    for (const auto& e : out.exponent_list()) {
        S acc{};
        for (const auto& f : b.exponent_list()) {
            for (int i = 0; i < a.dim(); ++i) joint[i] = e[i] + f[i];
            acc += a.at_exps(joint) * b.at_exps(f) *
                   from_exact<S>(Exact(multiset_multiplicity(f)));
        }
        out.at_exps(e) = acc;
    }
    return out;
}

/// Symmetrized product of l/2 Kronecker deltas (normalized convention).
/// The component at a multiset counts the perfect pairings compatible with
/// it, divided by the (l-1)!! total: prod (e_i - 1)!! / (l-1)!!, and zero
/// whenever any exponent is odd.
template <class S = Exact>
SymTensor<S> delta_product(int l, int dim = 3) {
    if (l < 0 || l % 2 != 0) throw std::invalid_argument("delta_product: rank must be even");
    SymTensor<S> out(l, dim);
    const BigInt total = double_factorial(l - 1);
    for (const auto& e : out.exponent_list()) {
        bool odd = false;
        BigInt pairings = 1;
        for (int ei : e) {
            if (ei % 2 != 0) { odd = true; break; }
            pairings *= double_factorial(ei - 1);
        }
        if (odd) continue;
        out.at_exps(e) = from_exact<S>(Exact(Rational(pairings, total)));
    }
    return out;
}

namespace detail {

/// Detracing coefficient for the k-th delta term over `dim` dimensions:
///   (-1)^k / 4^k * l! / ((l-2k)! k!) / prod_{j=1..k} (dim/2 + l - 1 - j).
/// Rational for every integer dim, including odd ones.
inline Exact detrace_coefficient(int l, int k, int dim) {
    Rational c = Rational(factorial(l), factorial(l - 2 * k) * factorial(k));
    c /= Rational(BigInt(1) << (2 * k));
    if (k % 2 != 0) c = -c;
    for (int j = 1; j <= k; ++j)
        c /= (Rational(dim, 2) + l - 1 - j);
    return Exact(c);
}

} // namespace detail

/// Traceless symmetric projection over an arbitrary dimension >= 2:
/// sum over k of coeff(l,k,dim) * Sym(trace^k(T) (x) delta^k). Every trace
/// of the output vanishes identically, by construction of the coefficients.
template <class S>
SymTensor<S> detrace_general(const SymTensor<S>& t) {
    const int l = t.rank(), n = t.dim();
    if (n < 2) throw std::invalid_argument("detrace_general: dimension must be >= 2");
    SymTensor<S> out(l, n);
    SymTensor<S> traced = t;
    for (int k = 0; 2 * k <= l; ++k) {
        if (k > 0) traced = trace(traced);
        SymTensor<S> term = sym_outer(traced, delta_product<S>(2 * k, n));
        out += term.scaled_exact(detail::detrace_coefficient(l, k, n));
    }
    return out;
}

/// Symmetric traceless tensor over 3 dimensions: 2l+1 degrees of freedom.
/// Construct via detrace() or from_traceless(); both guarantee the
/// invariant that every single trace is the exact zero tensor (for exact
/// scalar types) or vanishes to rounding (for floating ones).
template <class S>
class StfTensor {
public:
    StfTensor() : t_(0, 3) {}

    static StfTensor from_traceless_unchecked(SymTensor<S> t) {
        if (t.dim() != 3) throw std::invalid_argument("StfTensor: dimension must be 3");
        return StfTensor(std::move(t));
    }

    int rank() const { return t_.rank(); }
    std::size_t size() const { return t_.size(); }
    const SymTensor<S>& sym() const { return t_; }
    const S& operator[](std::size_t i) const { return t_[i]; }
    const S& at_exps(std::span<const int> e) const { return t_.at_exps(e); }
    const S& at_exps(std::initializer_list<int> e) const { return t_.at_exps(e); }
    const S& at_indices(std::initializer_list<int> ix) const { return t_.at_indices(ix); }
    bool is_zero() const { return t_.is_zero(); }

    friend bool operator==(const StfTensor& a, const StfTensor& b) { return a.t_ == b.t_; }

private:
    explicit StfTensor(SymTensor<S> t) : t_(std::move(t)) {}
    SymTensor<S> t_;
};

/// Symmetric detracing over 3 dimensions (the curly-brace projector).
template <class S>
StfTensor<S> detrace(const SymTensor<S>& t) {
    if (t.dim() != 3) throw std::invalid_argument("detrace: dimension must be 3 (see detrace_general)");
    return StfTensor<S>::from_traceless_unchecked(detrace_general(t));
}

template <class S>
S contract_full(const StfTensor<S>& a, const StfTensor<S>& b) {
    return contract_full(a.sym(), b.sym());
}
template <class S>
S contract_full(const SymTensor<S>& a, const StfTensor<S>& b) {
    return contract_full(a, b.sym());
}
template <class S>
S contract_full(const StfTensor<S>& a, const SymTensor<S>& b) {
    return contract_full(a.sym(), b);
}

/// Largest trace component in absolute value, as a double; exact zero for
/// exact scalars that detrace() produced.
template <class S>
double max_trace_residual(const SymTensor<S>& t);

inline double scalar_abs(const Exact& e) { return std::abs(e.to_double()); }
inline double scalar_abs(double v) { return std::abs(v); }
inline double scalar_abs(const std::complex<double>& v) { return std::abs(v); }
inline double scalar_abs(const CExact& v) { return std::abs(v.to_complex()); }

template <class S>
double max_trace_residual(const SymTensor<S>& t) {
    if (t.rank() < 2) return 0.0;
    auto tr = trace(t);
    double m = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) m = std::max(m, scalar_abs(tr[i]));
    return m;
}

} // namespace stf
