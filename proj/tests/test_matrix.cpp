#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "odyn/matrix.hpp"

using namespace odyn;

namespace {

QMatrix qmat(std::initializer_list<std::initializer_list<long>> rows) {
    QMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

ZMatrix zmat(std::initializer_list<std::initializer_list<long>> rows) {
    ZMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = Int(v);
        ++i;
    }
    return m;
}

UnivariatePoly poly_of(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return UnivariatePoly(std::move(c));
}

// All partitions of n in weakly decreasing order.
void partitions_rec(unsigned n, unsigned maxpart, std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<unsigned>> partitions(unsigned n) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

QMatrix jordan_block_diag(const std::vector<std::pair<long, unsigned>>& blocks) {
    std::size_t n = 0;
    for (const auto& [ev, size] : blocks) n += size;
    QMatrix m(n, n);
    std::size_t at = 0;
    for (const auto& [ev, size] : blocks) {
        for (unsigned t = 0; t < size; ++t) {
            m.at(at + t, at + t) = Rational(ev);
            if (t + 1 < size) m.at(at + t, at + t + 1) = 1;
        }
        at += size;
    }
    return m;
}

}  // namespace

TEST_CASE("char_poly examples") {
    CHECK(char_poly(qmat({{2, 0}, {0, 3}})) == poly_of({6, -5, 1}));
    CHECK(char_poly(qmat({{0, 1}, {1, 1}})) == poly_of({-1, -1, 1}));
    CHECK(char_poly(qmat({{0, -1}, {1, 0}})) == poly_of({1, 0, 1}));
    CHECK_THROWS_AS(char_poly(QMatrix(2, 3)), domain_error);
}

TEST_CASE("Cayley-Hamilton on random 4x4 rational matrices") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        QMatrix a(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = make_rational(num(rng), den(rng));
        UnivariatePoly cp = char_poly(a);
        QMatrix acc(4, 4);
        for (int d = cp.degree(); d >= 0; --d) {
            acc = acc * a;
            for (std::size_t i = 0; i < 4; ++i) acc.at(i, i) += cp.coeff(d);
        }
        CHECK(acc == QMatrix(4, 4));
    }
}

TEST_CASE("mat_pow examples") {
    CHECK(mat_pow(qmat({{2, 1}, {0, 2}}), 2) == qmat({{4, 4}, {0, 4}}));
    CHECK(mat_pow(qmat({{5, -3}, {2, 7}}), 0) == QMatrix::identity(2));
    CHECK(mat_pow(zmat({{0, 1}, {1, 1}}), 5) == zmat({{3, 5}, {5, 8}}));
}

TEST_CASE("integer_kernel examples") {
    ZMatrix m1(1, 2);
    m1.at(0, 0) = 2;
    m1.at(0, 1) = -1;
    auto k1 = integer_kernel(m1);
    REQUIRE(k1.size() == 1);
    CHECK(k1[0] == std::vector<Int>{Int(1), Int(2)});

    CHECK(integer_kernel(zmat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());

    auto k3 = integer_kernel(ZMatrix(2, 2));
    REQUIRE(k3.size() == 2);
    CHECK(k3[0] == std::vector<Int>{Int(0), Int(1)});
    CHECK(k3[1] == std::vector<Int>{Int(1), Int(0)});
}

TEST_CASE("integer_kernel vectors satisfy M v = 0 and rank is right") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        ZMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);
        auto kernel = integer_kernel(m);
        for (const auto& v : kernel) {
            auto image = m.apply(v);
            for (const auto& x : image) CHECK(x == 0);
        }
        CHECK(kernel.size() == c - m.to_rational().rank());
    }
}

TEST_CASE("fixed_character examples") {
    auto f1 = fixed_character(zmat({{1, 1}, {0, 1}}), 12);
    REQUIRE(f1.has_value());
    CHECK(f1->second == 1);
    CHECK(f1->first == std::vector<Int>{Int(0), Int(1)});

    auto f2 = fixed_character(zmat({{0, -1}, {1, 0}}), 12);
    REQUIRE(f2.has_value());
    CHECK(f2->second == 4);
    // the whole lattice is fixed by A^4 = I; first canonical basis vector
    CHECK(f2->first == std::vector<Int>{Int(0), Int(1)});

    ZMatrix two(1, 1);
    two.at(0, 0) = 2;
    CHECK_FALSE(fixed_character(two, 10).has_value());

    CHECK_THROWS_AS(fixed_character(ZMatrix(2, 2), 5), dominance_error);
}

TEST_CASE("fixed_character default period covers all root-of-unity orders") {
    // phi(n) <= 2 for n in {1,2,3,4,6}: lcm = 12
    CHECK(fixed_character_default_period(2) == 12);
    // order-6 rotation found without an explicit bound
    auto f = fixed_character(zmat({{0, -1}, {1, 1}}));
    REQUIRE(f.has_value());
    CHECK(f->second == 6);
}

TEST_CASE("fixed_character output is fixed by the transpose power") {
    ZMatrix a = zmat({{0, -1}, {1, 1}});  // order 6 rotation-like
    auto f = fixed_character(a, 12);
    REQUIRE(f.has_value());
    auto [w, m] = *f;
    auto moved = mat_pow(a.transpose(), m).apply(w);
    CHECK(moved == w);
}

TEST_CASE("jordan_structure examples") {
    auto d = jordan_structure(qmat({{2, 0}, {0, 2}}));
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].minpoly == poly_of({-2, 1}));
    CHECK(d.factors[0].block_sizes == std::vector<unsigned>{1, 1});

    auto j2 = jordan_structure(qmat({{2, 1}, {0, 2}}));
    REQUIRE(j2.factors.size() == 1);
    CHECK(j2.factors[0].block_sizes == std::vector<unsigned>{2});

    auto j3 = jordan_structure(qmat({{2, 1, 0}, {0, 2, 1}, {0, 0, 2}}));
    REQUIRE(j3.factors.size() == 1);
    CHECK(j3.factors[0].block_sizes == std::vector<unsigned>{3});

    CHECK_THROWS_AS(jordan_structure(qmat({{0, 0}, {0, 1}})), dominance_error);
}

TEST_CASE("jordan_structure of an irrational-spectrum companion matrix") {
    // companion of (x^2-2)^2, non-diagonalizable: one 2-block per root
    QMatrix c(4, 4);
    c.at(0, 3) = -4;
    c.at(1, 0) = 1;
    c.at(2, 1) = 1;
    c.at(2, 3) = 4;
    c.at(3, 2) = 1;
    // charpoly x^4 - 4x^2 + 4 = (x^2-2)^2
    CHECK(char_poly(c) == poly_of({4, 0, -4, 0, 1}));
    auto js = jordan_structure(c);
    REQUIRE(js.factors.size() == 1);
    CHECK(js.factors[0].minpoly == poly_of({-2, 0, 1}));
    CHECK(js.factors[0].block_sizes == std::vector<unsigned>{2});
    CHECK(js.factors[0].roots.size() == 2);
    CHECK(js.total_blocks_of_size(2) == 2);  // one per conjugate root
}

TEST_CASE("jordan_structure recovers every hand-built block structure (k <= 5)") {
    const long evs[3] = {2, 3, 5};
    for (unsigned k = 1; k <= 5; ++k) {
        for (const auto& part : partitions(k)) {
            unsigned nblocks = part.size();
            // all eigenvalue assignments over {2,3,5}
            std::vector<unsigned> assign(nblocks, 0);
            while (true) {
                std::vector<std::pair<long, unsigned>> blocks;
                for (unsigned b = 0; b < nblocks; ++b) blocks.push_back({evs[assign[b]], part[b]});
                QMatrix m = jordan_block_diag(blocks);
                auto js = jordan_structure(m);
                // expected multiset per eigenvalue
                std::map<long, std::vector<unsigned>> expected;
                for (const auto& [ev, size] : blocks) expected[ev].push_back(size);
                for (auto& [ev, sizes] : expected) std::sort(sizes.rbegin(), sizes.rend());
                REQUIRE(js.factors.size() == expected.size());
                for (const auto& f : js.factors) {
                    REQUIRE(f.minpoly.degree() == 1);
                    long ev = Rational(-f.minpoly.coeff(0)).get_num().get_si();
                    REQUIRE(expected.count(ev) == 1);
                    CHECK(f.block_sizes == expected[ev]);
                }
                // advance assignment
                unsigned pos = 0;
                while (pos < nblocks && assign[pos] == 2) assign[pos++] = 0;
                if (pos == nblocks) break;
                ++assign[pos];
            }
        }
    }
}

TEST_CASE("rational_jordan recovers the form through a change of basis") {
    // conjugate J = J_{2,2} + diag(3) by an invertible integer matrix
    QMatrix j = qmat({{2, 1, 0}, {0, 2, 0}, {0, 0, 3}});
    QMatrix p = qmat({{1, 2, 0}, {0, 1, 1}, {1, 0, 1}});
    QMatrix a = p * j * p.inverse();
    auto rj = rational_jordan(a);
    REQUIRE(rj.has_value());
    // factor order is by ascending coefficients: (x-3) sorts before (x-2)
    CHECK(rj->jordan == qmat({{3, 0, 0}, {0, 2, 1}, {0, 0, 2}}));
    CHECK(a * rj->basis == rj->basis * rj->jordan);
    CHECK(rj->size_per_block == std::vector<unsigned>{1, 2});

    // irrational spectrum: no rational Jordan basis
    CHECK_FALSE(rational_jordan(qmat({{0, 2}, {1, 0}})).has_value());
}

TEST_CASE("jordan_structure with mixed block sizes over a quadratic factor") {
    // companion((x^2-2)^2) + companion(x^2-2): per root, blocks {2, 1}
    QMatrix m(6, 6);
    // companion of x^4 - 4x^2 + 4
    m.at(0, 3) = -4;
    m.at(1, 0) = 1;
    m.at(2, 1) = 1;
    m.at(2, 3) = 4;
    m.at(3, 2) = 1;
    // companion of x^2 - 2
    m.at(4, 5) = 2;
    m.at(5, 4) = 1;
    auto js = jordan_structure(m);
    REQUIRE(js.factors.size() == 1);
    CHECK(js.factors[0].minpoly == poly_of({-2, 0, 1}));
    CHECK(js.factors[0].block_sizes == std::vector<unsigned>{2, 1});
    CHECK(js.factors[0].roots.size() == 2);
    CHECK(js.total_blocks_of_size(2) == 2);
    CHECK(js.total_blocks_of_size(1) == 2);
    CHECK(js.max_block_size() == 2);
}
