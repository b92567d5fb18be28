#include <catch2/catch_amalgamated.hpp>

#include "hwcat/matrix.hpp"

#include <random>

using namespace hwcat;

using MQ = Matrix<Rat>;
using MP = Matrix<Fp>;

static FieldCtx<Rat> Q;

TEST_CASE("rational scalar arithmetic is exact", "[field]") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK((-a) == Rat(-1, 3));
    CHECK(a.inv() == Rat(3));
    CHECK(Rat(2, 4) == Rat(1, 2)); // canonicalized
    CHECK_THROWS(Rat(1, 0));
    CHECK_THROWS(Rat().inv());
}

TEST_CASE("prime field arithmetic with runtime modulus", "[field]") {
    FieldCtx<Fp> F5{5};
    Fp a = F5.from_long(3), b = F5.from_long(4);
    CHECK(a + b == F5.from_long(2));
    CHECK(a * b == F5.from_long(2));
    CHECK(a - b == F5.from_long(4));
    CHECK(a.inv() == F5.from_long(2)); // 3*2 = 6 = 1 mod 5
    CHECK(F5.from_long(-1) == F5.from_long(4));
    CHECK(F5.from_ratio(1, 2) == F5.from_long(3)); // 2*3 = 1 mod 5
    // default zero binds to any modulus
    Fp z;
    CHECK(z + a == a);
    CHECK((z * a).is_zero());
    CHECK_THROWS(a + Fp(1, 7)); // mixed moduli refuse to combine
}

TEST_CASE("rref on an identity block is a fixed point", "[matrix]") {
    MQ m = MQ::identity(3, Q);
    auto e = m.rref();
    CHECK(e.rank == 3);
    CHECK(e.reduced == m);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("rref of a rank-one rational matrix", "[matrix]") {
    MQ m = MQ::from_longs({{1, 2}, {2, 4}}, Q);
    auto e = m.rref();
    CHECK(e.rank == 1);
    CHECK(e.reduced.at(0, 0) == Rat(1));
    CHECK(e.reduced.at(0, 1) == Rat(2));
    CHECK(e.reduced.at(1, 0).is_zero());
    CHECK(e.reduced.at(1, 1).is_zero());

    // kernel: one column proportional to (2, -1)^T
    MQ k = m.kernel_basis();
    REQUIRE(k.cols() == 1);
    CHECK((m * k).is_zero());
    CHECK(k.at(0, 0) * Rat(-1) == k.at(1, 0) * Rat(2));
}

TEST_CASE("rref is idempotent", "[matrix]") {
    MQ m = MQ::from_longs({{0, 2, 1}, {3, 0, 5}, {3, 2, 6}}, Q);
    MQ r = m.rref().reduced;
    CHECK(r.rref().reduced == r);
}

TEST_CASE("solve picks the free-variables-zero representative", "[matrix]") {
    MQ m = MQ::from_longs({{1, 2}, {2, 4}}, Q);
    MQ b(2, 1, Q);
    b.at(0, 0) = Rat(1);
    b.at(1, 0) = Rat(2);
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0) == Rat(1));
    CHECK(x->at(1, 0) == Rat(0));

    MQ b2(2, 1, Q);
    b2.at(0, 0) = Rat(1); // (1,0): inconsistent for this rank-1 matrix
    CHECK_FALSE(m.solve(b2).has_value());
}

TEST_CASE("kernel of injective and zero maps", "[matrix]") {
    CHECK(MQ::identity(4, Q).kernel_basis().cols() == 0);
    MQ z(3, 2, Q);
    MQ k = z.kernel_basis();
    CHECK(k.cols() == 2);
    CHECK(k.is_identity());
}

TEST_CASE("rank over F_2 differs from rank over Q", "[matrix]") {
    FieldCtx<Fp> F2{2};
    MP m(2, 2, F2);
    m.at(0, 0) = F2.one();
    m.at(0, 1) = F2.one();
    m.at(1, 0) = F2.one();
    m.at(1, 1) = F2.from_long(-1); // = 1 mod 2
    CHECK(m.rank() == 1);

    MQ mq = MQ::from_longs({{1, 1}, {1, -1}}, Q);
    CHECK(mq.rank() == 2);
}

TEST_CASE("rank equals rank of the transpose on a deterministic sample", "[matrix][property]") {
    std::mt19937_64 rng(20260819u);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        MQ m(r, c, Q);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = Rat(static_cast<long>(rng() % 7) - 3);
        CHECK(m.rank() == m.transpose().rank());
        // kernel dimension identity
        CHECK(m.kernel_basis().cols() == c - m.rank());
    }
}

TEST_CASE("inverse round trip and failure", "[matrix]") {
    MQ m = MQ::from_longs({{2, 1}, {1, 1}}, Q);
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK((m * *inv).is_identity());
    CHECK((*inv * m).is_identity());
    CHECK_FALSE(MQ::from_longs({{1, 2}, {2, 4}}, Q).inverse().has_value());
}

TEST_CASE("block and column helpers", "[matrix]") {
    MQ a = MQ::from_longs({{1, 2}, {3, 4}}, Q);
    MQ b = MQ::from_longs({{5}, {6}}, Q);
    MQ h = a.hstack(b);
    CHECK(h.cols() == 3);
    CHECK(h.at(1, 2) == Rat(6));
    MQ v = a.vstack(MQ::from_longs({{7, 8}}, Q));
    CHECK(v.rows() == 3);
    CHECK(v.at(2, 1) == Rat(8));
    CHECK(a.take_cols({1}).at(0, 0) == Rat(2));
    CHECK(a.left_kernel_basis().rows() == 0);
}
