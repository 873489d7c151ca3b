#include "doctest.h"

#include "qca/random.hpp"

using namespace qca;

static PolyMatrix M(const std::string& s, const RingCtx& c) { return parse_matrix(s, c); }

TEST_CASE("adjoint examples") {
    auto c = make_ctx(3, {"z"});
    CHECK(adjoint(M("z", c)) == M("z^-1", c));
    PolyMatrix lam = M("0,1;-1,0", c);
    CHECK(adjoint(lam) == -lam);
    CHECK(adjoint(M("0,1;0,0", c)) == M("0,0;1,0", c));
}

TEST_CASE("determinant and inverse examples") {
    auto c = make_ctx(3, {"z"});
    PolyMatrix d = M("z,0;0,z", c);
    CHECK(determinant(d) == parse_poly("z^2", c));
    CHECK(is_unit(determinant(d)));
    CHECK(inverse(d) == M("z^-1,0;0,z^-1", c));
    PolyMatrix a = M("1,1;1,2", c);
    CHECK(determinant(a) == parse_poly("1", c));
    CHECK(inverse(a) == M("2,2;2,1", c));
    PolyMatrix b = M("1,z;0,1+z", c);
    CHECK(determinant(b) == parse_poly("1+z", c));
    CHECK_THROWS_AS(inverse(b), NotInvertible);
    CHECK_THROWS_AS(determinant(M("1,2", c)), DomainError);
}

TEST_CASE("direct sums") {
    auto c = make_ctx(5, {});
    CHECK(hat_dsum(PolyMatrix::identity(c, 2), PolyMatrix::identity(c, 2)) == PolyMatrix::identity(c, 4));
    PolyMatrix h = M("0,1;-1,0", c);
    CHECK(hat_dsum(h, h) == M("0,0,1,0;0,0,0,1;-1,0,0,0;0,-1,0,0", c));
    CHECK_THROWS_AS(hat_dsum(M("1", c), h), DomainError);
    CHECK(form_dsum(M("1", c), M("2", c)) == M("1,0;0,2", c));
    CHECK(form_dsum(M("1,2;3,4", c), PolyMatrix(c, 0, 0)) == M("1,2;3,4", c));
    CHECK(form_dsum(PolyMatrix(c, 0, 0), M("4", c)) == M("4", c));
}

TEST_CASE("hat direct sum is multiplicative") {
    Rng rng(21);
    auto c = make_ctx(3, {"z"});
    for (int i = 0; i < 20; ++i) {
        PolyMatrix u = random_matrix(rng, c, 2, 2, 2, 2), u2 = random_matrix(rng, c, 2, 2, 2, 2);
        PolyMatrix v = random_matrix(rng, c, 4, 4, 2, 2), v2 = random_matrix(rng, c, 4, 4, 2, 2);
        CHECK(hat_dsum(u, v) * hat_dsum(u2, v2) == hat_dsum(u * u2, v * v2));
    }
}

TEST_CASE("z_spread") {
    auto c = make_ctx(2, {"z"});
    CHECK(z_spread(M("z,0;0,z", c), 0) == std::make_pair(1, 1));
    CHECK(z_spread(M("z+z^-1, z+1+z^-1; z+1+z^-1, z+z^-1", c), 0) == std::make_pair(-1, 1));
    CHECK(z_spread(PolyMatrix::identity(c, 3), 0) == std::make_pair(0, 0));
}

TEST_CASE("coarse graining") {
    auto c = make_ctx(5, {"x"});
    CHECK(coarse_grain(M("x", c), 0, 2) == M("0,x;1,0", c));
    CHECK(coarse_grain(PolyMatrix::identity(c, 3), 0, 4) == PolyMatrix::identity(c, 12));
    CHECK_THROWS_AS(coarse_grain(M("x", c), 0, 0), DomainError);
    Rng rng(22);
    auto c2 = make_ctx(3, {"x", "y"});
    for (int b = 1; b <= 4; ++b)
        for (int i = 0; i < 10; ++i) {
            PolyMatrix a = random_matrix(rng, c2, 2, 3, 3, 3), d = random_matrix(rng, c2, 3, 2, 3, 3);
            CHECK(coarse_grain(a * d, 0, b) == coarse_grain(a, 0, b) * coarse_grain(d, 0, b));
            CHECK(coarse_grain(adjoint(a), 1, b) == adjoint(coarse_grain(a, 1, b)));
        }
}

TEST_CASE("adjoint, determinant and inverse properties") {
    Rng rng(23);
    for (uint32_t p : {2u, 3u, 7u}) {
        auto c = make_ctx(p, {"x", "y"});
        for (int i = 0; i < 15; ++i) {
            PolyMatrix a = random_matrix(rng, c, 3, 3, 2, 2), b = random_matrix(rng, c, 3, 3, 2, 2);
            CHECK(adjoint(a * b) == adjoint(b) * adjoint(a));
            CHECK(adjoint(adjoint(a)) == a);
            CHECK(determinant(a * b) == determinant(a) * determinant(b));
            PolyMatrix e = random_invertible(rng, c, 4, 12, 1);
            CHECK(is_unit(determinant(e)));
            PolyMatrix ei = inverse(e);
            CHECK((e * ei).is_identity());
            CHECK((ei * e).is_identity());
        }
    }
}

TEST_CASE("matrix parse and print") {
    auto c = make_ctx(7, {"x", "z"});
    PolyMatrix m = M("1, x\n z^-1 + 3, 0", c);
    CHECK(m.rows() == 2);
    CHECK(M(to_string(m), c) == m);
    CHECK_THROWS_AS(M("1,2;3", c), ParseError);
    try {
        M("1,2\n3,q", c);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("ring changes") {
    auto c = make_ctx(3, {"x", "z"});
    PolyMatrix m = M("x+z, 1; z^2, x*z", c);
    PolyMatrix s = substitute_one(m, "z");
    CHECK(s == parse_matrix("x+1, 1; 1, x", make_ctx(3, {"x"})));
    CHECK(substitute_one(embed(s, "w"), "w") == s);
    PolyMatrix mv = move_var_last(m, "x");
    CHECK(mv.ctx().vars == std::vector<std::string>{"z", "x"});
    CHECK(mv == parse_matrix("x+z, 1; z^2, x*z", mv.ctx()));
}
