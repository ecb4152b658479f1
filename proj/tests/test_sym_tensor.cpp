#include "doctest.h"

#include "stf/sym_tensor.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

using namespace stf;
using stf_test::literal_detrace_rank2;
using stf_test::literal_detrace_rank3;
using stf_test::literal_detrace_rank4;
using stf_test::random_rational;
using stf_test::random_tensor;

namespace {

// dense full-index view, 3^rank entries in odometer order
std::vector<Exact> dense_view(const SymTensor<Exact>& t) {
    const int l = t.rank();
    std::vector<Exact> out;
    std::vector<int> idx(l, 0);
    while (true) {
        out.push_back(l == 0 ? t[0] : t.at_indices(std::span<const int>(idx)));
        int pos = l - 1;
        while (pos >= 0 && idx[pos] == 2) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    return out;
}

std::size_t dense_offset(std::span<const int> idx) {
    std::size_t off = 0;
    for (int i : idx) off = off * 3 + static_cast<std::size_t>(i);
    return off;
}

// number of perfect matchings of the tuple into equal-letter pairs
long long count_matchings(std::vector<int>& letters, std::vector<bool>& used) {
    std::size_t first = 0;
    while (first < used.size() && used[first]) ++first;
    if (first == used.size()) return 1;
    used[first] = true;
    long long total = 0;
    for (std::size_t j = first + 1; j < used.size(); ++j) {
        if (used[j] || letters[j] != letters[first]) continue;
        used[j] = true;
        total += count_matchings(letters, used);
        used[j] = false;
    }
    used[first] = false;
    return total;
}

} // namespace

TEST_CASE("storage size matches the multiset count") {
    for (int l = 0; l <= 8; ++l) {
        SymTensor<Exact> t(l, 3);
        CHECK(static_cast<int>(t.size()) == (l + 1) * (l + 2) / 2);
    }
    CHECK(SymTensor<Exact>(2, 4).size() == 10);
    CHECK(SymTensor<Exact>(3, 2).size() == 4);
}

TEST_CASE("symmetrize averages over orderings") {
    std::map<std::vector<int>, Exact> t;
    t[{0, 1}] = Exact(1); // T_xy = 1, T_yx omitted (= 0)
    auto s = symmetrize(t, 2);
    CHECK(s.at_exps({1, 1, 0}) == Exact(1, 2));
    CHECK(s.at_exps({2, 0, 0}).is_zero());

    std::map<std::vector<int>, Exact> u;
    u[{0, 1, 2}] = Exact(6);
    auto su = symmetrize(u, 3);
    CHECK(su.at_exps({1, 1, 1}) == Exact(1));

    CHECK_THROWS_AS(symmetrize(std::map<std::vector<int>, Exact>{{{0, 1, 2}, Exact(1)}}, 2),
                    std::invalid_argument);
}

TEST_CASE("symmetrize is idempotent and matches the permutation average") {
    std::mt19937 rng(11);
    std::map<std::vector<int>, Exact> full;
    std::vector<int> idx(3, 0);
    while (true) {
        full[idx] = random_rational(rng);
        int pos = 2;
        while (pos >= 0 && idx[pos] == 2) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    auto s = symmetrize(full, 3);

    // brute permutation average at every tuple
    std::vector<int> probe(3, 0);
    while (true) {
        std::vector<int> sorted = probe;
        std::sort(sorted.begin(), sorted.end());
        Exact acc;
        int count = 0;
        do {
            acc += full[sorted];
            ++count;
        } while (std::next_permutation(sorted.begin(), sorted.end()));
        CHECK(s.at_indices(std::span<const int>(probe)) == acc / Exact(count));
        int pos = 2;
        while (pos >= 0 && probe[pos] == 2) probe[pos--] = 0;
        if (pos < 0) break;
        ++probe[pos];
    }

    // idempotence: feeding a symmetric tensor back through changes nothing
    std::map<std::vector<int>, Exact> again;
    std::vector<int> idx2(3, 0);
    while (true) {
        again[idx2] = s.at_indices(std::span<const int>(idx2));
        int pos = 2;
        while (pos >= 0 && idx2[pos] == 2) idx2[pos--] = 0;
        if (pos < 0) break;
        ++idx2[pos];
    }
    CHECK(symmetrize(again, 3) == s);
}

TEST_CASE("trace basics") {
    SymTensor<Exact> delta(2, 3);
    delta.at_exps({2, 0, 0}) = Exact(1);
    delta.at_exps({0, 2, 0}) = Exact(1);
    delta.at_exps({0, 0, 2}) = Exact(1);
    CHECK(trace(delta)[0] == Exact(3));

    SymTensor<Exact> diag(2, 3);
    diag.at_exps({2, 0, 0}) = Exact(1);
    CHECK(trace(diag)[0] == Exact(1));

    CHECK_THROWS_AS(trace(SymTensor<Exact>(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(trace(delta, 0, 0), std::invalid_argument);

    // the chosen pair is immaterial for symmetric storage
    std::mt19937 rng(3);
    auto t = random_tensor(4, rng);
    CHECK(trace(t, 0, 1) == trace(t, 2, 3));
}

TEST_CASE("trace agrees with dense full-index contraction") {
    std::mt19937 rng(5);
    for (int l : {2, 3, 4, 5, 6}) {
        auto t = (l % 2 == 0) ? delta_product<Exact>(l) : random_tensor(l, rng);
        auto dense = dense_view(t);
        auto tr = trace(t);
        // contract the last two slots explicitly in the dense view
        std::vector<int> idx(l - 2, 0);
        while (true) {
            Exact acc;
            for (int a = 0; a < 3; ++a) {
                std::vector<int> full = idx;
                full.push_back(a);
                full.push_back(a);
                acc += dense[dense_offset(full)];
            }
            CHECK(tr.at_indices(std::span<const int>(idx)) == acc);
            int pos = l - 3;
            while (pos >= 0 && idx[pos] == 2) idx[pos--] = 0;
            if (pos < 0) break;
            ++idx[pos];
        }
    }
}

TEST_CASE("delta products count pairings") {
    auto d2 = delta_product<Exact>(2);
    CHECK(d2.at_exps({2, 0, 0}) == Exact(1));
    CHECK(d2.at_exps({1, 1, 0}).is_zero());

    auto d4 = delta_product<Exact>(4);
    CHECK(d4.at_exps({2, 2, 0}) == Exact(1, 3));
    CHECK(d4.at_exps({4, 0, 0}) == Exact(1));

    CHECK_THROWS_AS(delta_product<Exact>(3), std::invalid_argument);

    // brute-force pairing enumeration, several ranks
    for (int l : {2, 4, 6, 8}) {
        auto d = delta_product<Exact>(l);
        const auto exps = d.exponent_list();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            std::vector<int> letters;
            for (int a = 0; a < 3; ++a)
                for (int c = 0; c < exps[i][a]; ++c) letters.push_back(a);
            std::vector<bool> used(letters.size(), false);
            const long long matchings = count_matchings(letters, used);
            const Exact expected(Rational(matchings, double_factorial(l - 1)));
            CHECK(d[i] == expected);
        }
    }
}

TEST_CASE("detracing reproduces the closed low-rank forms") {
    // the identity has no traceless part
    SymTensor<Exact> delta(2, 3);
    for (int a = 0; a < 3; ++a) {
        std::array<int, 3> e{0, 0, 0};
        e[a] = 2;
        delta.at_exps(e) = Exact(1);
    }
    CHECK(detrace(delta).is_zero());

    SymTensor<Exact> diag(2, 3);
    diag.at_exps({2, 0, 0}) = Exact(1);
    auto d = detrace(diag);
    CHECK(d.at_exps({2, 0, 0}) == Exact(2, 3));
    CHECK(d.at_exps({0, 2, 0}) == Exact(-1, 3));
    CHECK(d.at_exps({0, 0, 2}) == Exact(-1, 3));
    CHECK(d.at_exps({1, 1, 0}).is_zero());

    // expansion coefficients of the rank-2 projector
    CHECK(detail::detrace_coefficient(2, 0, 3) == Exact(1));
    CHECK(detail::detrace_coefficient(2, 1, 3) == Exact(-1, 3));

    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto t2 = random_tensor(2, rng);
        CHECK(detrace(t2).sym() == literal_detrace_rank2(t2));
        auto t3 = random_tensor(3, rng);
        CHECK(detrace(t3).sym() == literal_detrace_rank3(t3));
        auto t4 = random_tensor(4, rng);
        CHECK(detrace(t4).sym() == literal_detrace_rank4(t4));
    }
}

TEST_CASE("detrace kills every trace and is idempotent") {
    std::mt19937 rng(23);
    for (int l = 2; l <= 8; ++l) {
        auto d = detrace(random_tensor(l, rng)).sym();
        for (int k = l; k >= 2; k -= 2) {
            auto tr = trace(d);
            CHECK(tr.is_zero());
            if (k > 2) d = trace(d); // deeper traces vanish too
        }
    }
    for (int l = 2; l <= 6; ++l) {
        auto d = detrace(random_tensor(l, rng));
        CHECK(detrace(d.sym()) == d);
    }
}

TEST_CASE("general-dimension detracing") {
    // 2d identity has no traceless part
    SymTensor<Exact> delta2(2, 2);
    delta2.at_exps({2, 0}) = Exact(1);
    delta2.at_exps({0, 2}) = Exact(1);
    CHECK(detrace_general(delta2).is_zero());

    // 4d rank-2 example
    SymTensor<Exact> diag4(2, 4);
    diag4.at_exps({2, 0, 0, 0}) = Exact(1);
    auto d4 = detrace_general(diag4);
    CHECK(d4.at_exps({2, 0, 0, 0}) == Exact(3, 4));
    CHECK(d4.at_exps({0, 2, 0, 0}) == Exact(-1, 4));
    CHECK(detail::detrace_coefficient(2, 1, 4) == Exact(-1, 4));

    // n=3 path and the dedicated function agree
    std::mt19937 rng(29);
    for (int l = 2; l <= 5; ++l) {
        auto t = random_tensor(l, rng);
        CHECK(detrace_general(t) == detrace(t).sym());
    }

    // traceless across dimensions
    for (int dim : {2, 4, 5}) {
        for (int l = 2; l <= 4; ++l) {
            auto t = random_tensor(l, rng, dim);
            CHECK(trace(detrace_general(t)).is_zero());
        }
    }
    CHECK_THROWS_AS(detrace_general(SymTensor<Exact>(2, 1)), std::invalid_argument);
}

TEST_CASE("contractions") {
    SymTensor<Exact> delta(2, 3);
    for (int a = 0; a < 3; ++a) {
        std::array<int, 3> e{0, 0, 0};
        e[a] = 2;
        delta.at_exps(e) = Exact(1);
    }
    CHECK(contract_full(delta, delta) == Exact(3));

    std::mt19937 rng(31);
    // contracting the identity with any detraced tensor gives zero
    for (int trial = 0; trial < 10; ++trial) {
        auto t = random_tensor(2, rng);
        CHECK(contract_full(delta, detrace(t).sym()).is_zero());
    }

    // worked example: A = diag(1,0,0), B = diag(0,1,0)
    SymTensor<Exact> a(2, 3), b(2, 3);
    a.at_exps({2, 0, 0}) = Exact(1);
    b.at_exps({0, 2, 0}) = Exact(1);
    CHECK(contract_full(a, detrace(b).sym()) == Exact(-1, 3));
    CHECK(contract_full(detrace(a).sym(), detrace(b).sym()) == Exact(-1, 3));

    CHECK_THROWS_AS(contract_full(a, SymTensor<Exact>(3, 3)), std::invalid_argument);
}

TEST_CASE("detraced contraction identity") {
    std::mt19937 rng(37);
    for (int l = 1; l <= 5; ++l) {
        for (int trial = 0; trial < 5; ++trial) {
            auto a = random_tensor(l, rng);
            auto b = random_tensor(l, rng);
            auto db = detrace(b).sym();
            CHECK(contract_full(a, db) == contract_full(detrace(a).sym(), db));
        }
    }
}

TEST_CASE("sym_outer splits multiplicities correctly") {
    std::mt19937 rng(41);
    auto a = random_tensor(2, rng);
    auto b = random_tensor(1, rng);
    auto s = sym_outer(a, b);
    // check one component against the explicit 3-way split
    // (xy|z component: average of A_xy B_z, A_xz B_y, A_yz B_x with weights)
    Exact expect = (a.at_exps({1, 1, 0}) * b.at_exps({0, 0, 1}) +
                    a.at_exps({1, 0, 1}) * b.at_exps({0, 1, 0}) +
                    a.at_exps({0, 1, 1}) * b.at_exps({1, 0, 0})) /
                   Exact(3);
    CHECK(s.at_exps({1, 1, 1}) == expect);

    // outer with a rank-0 scalar is a plain scale
    SymTensor<Exact> unit(0, 3);
    unit[0] = Exact(5, 2);
    CHECK(sym_outer(a, unit) == a.scaled_exact(Exact(5, 2)));
}
