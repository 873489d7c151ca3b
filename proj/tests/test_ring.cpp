#include "doctest.h"

#include "qca/random.hpp"
#include "qca/ring.hpp"

using namespace qca;

static LaurentPoly P(const std::string& s, const RingCtx& c) { return parse_poly(s, c); }

TEST_CASE("fp helpers") {
    CHECK(fp_inv(3, 7) == 5);
    CHECK(fp_pow(2, 10, 1000003) == 1024);
    CHECK(is_prime(17));
    CHECK_FALSE(is_prime(15));
    CHECK(smallest_nonresidue(5) == 2);
    CHECK(smallest_nonresidue(7) == 3);
    CHECK(smallest_nonresidue(17) == 3);
    CHECK_THROWS_AS(fp_inv(0, 5), NotInvertible);
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(make_ctx(4, {"z"}), DomainError);
    CHECK_THROWS_AS(make_ctx(3, {"z", "z"}), DomainError);
    CHECK_THROWS_AS(make_ctx(3, {""}), DomainError);
    auto c = make_ctx(5, {"x", "y"});
    CHECK(c.var_index("y") == 1);
    CHECK_THROWS_AS(c.require_var("w"), DomainError);
}

TEST_CASE("involute examples") {
    auto c = make_ctx(5, {"x", "y", "z"});
    CHECK(involute(P("x", c)) == P("x^-1", c));
    CHECK(involute(P("1+z+z^-1", c)) == P("1+z^-1+z", c));
    CHECK(involute(P("2*x*y^-3", c)) == P("2*x^-1*y^3", c));
}

TEST_CASE("const_term and augment examples") {
    auto c2 = make_ctx(2, {"z"});
    CHECK(const_term(P("1+z", c2)) == 1);
    CHECK(const_term(P("z+z^-1", c2)) == 0);
    CHECK(augment(P("1+z+z^2", c2)) == 1);
    CHECK(augment(LaurentPoly(2, 1)) == 0);
    auto c3 = make_ctx(3, {"z"});
    
    LaurentPoly a = P("1+z", c3);
    CHECK(augment(a * a) == 1);
}

TEST_CASE("substitute_one examples") {
    auto c2 = make_ctx(2, {"z"});
    CHECK(substitute_one(P("z+z^-1", c2), 0).is_zero());
    auto c3 = make_ctx(3, {"z"});
    CHECK(substitute_one(P("z+z^-1", c3), 0) == LaurentPoly::constant(3, 0, 2));
    auto cxz = make_ctx(7, {"x", "z"});
    auto cx = make_ctx(7, {"x"});
    CHECK(substitute_one(P("x+z", cxz), 1) == P("x+1", cx));
    LaurentPoly r = P("3*x^2 - x^-4", cx);
    CHECK(substitute_one(embed_poly(r), 1) == r);
}

TEST_CASE("constant term of r-bar r equals augmentation over F_2") {
    Rng rng(11);
    auto c = make_ctx(2, {"x", "y"});
    for (int i = 0; i < 300; ++i) {
        LaurentPoly r = random_poly(rng, c, 6, 3);
        CHECK(const_term(involute(r) * r) == augment(r));
    }
}

TEST_CASE("ring axioms and homomorphisms on random triples") {
    Rng rng(12);
    for (uint32_t p : {2u, 3u, 5u, 13u}) {
        auto c = make_ctx(p, {"x", "z"});
        for (int i = 0; i < 60; ++i) {
            LaurentPoly a = random_poly(rng, c, 4, 3), b = random_poly(rng, c, 4, 3), d = random_poly(rng, c, 4, 3);
            CHECK((a * b) * d == a * (b * d));
            CHECK(a * (b + d) == a * b + a * d);
            CHECK(a * b == b * a);
            CHECK(involute(involute(a)) == a);
            CHECK(involute(a * b) == involute(a) * involute(b));
            CHECK(augment(a * b) == fp_mul(augment(a), augment(b), p));
            CHECK(substitute_one(a * b, 1) == substitute_one(a, 1) * substitute_one(b, 1));
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("exact division") {
    Rng rng(13);
    auto c = make_ctx(3, {"x", "y"});
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(rng, c, 4, 2), b = random_poly(rng, c, 3, 2);
        if (b.is_zero()) continue;
        CHECK((a * b).exact_div(b) == a);
    }
    LaurentPoly q;
    CHECK_FALSE(P("1+x", c).divides_into(P("1+y", c), q));
    CHECK_THROWS_AS(P("x", c).exact_div(P("1+x", c)), NotInvertible);
}

TEST_CASE("univariate division with remainder") {
    Rng rng(14);
    auto c = make_ctx(5, {"z"});
    for (int i = 0; i < 200; ++i) {
        LaurentPoly a = random_poly(rng, c, 5, 4), b = random_poly(rng, c, 3, 3);
        if (b.is_zero()) continue;
        LaurentPoly q, r;
        laurent_divrem(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.span_degree() < b.span_degree());
    }
    LaurentPoly u = normalizing_unit(P("3*z^-2 + z", c));
    CHECK(u * P("3*z^-2 + z", c) == P("3 + z^3", c));
}

TEST_CASE("parse and print") {
    auto c = make_ctx(7, {"x", "z"});
    LaurentPoly a = P("2*x^-1*z^3 + 1", c);
    CHECK(a.size() == 2);
    CHECK(to_string(a, c) == "2*x^-1*z^3 + 1");
    CHECK(to_string(P("z + z^-1", c), c) == "z + z^-1");
    CHECK(to_string(P("-1", c), c) == "-1");
    CHECK(to_string(P("0", c), c) == "0");
    CHECK(P("x*x", c) == P("x^2", c));
    CHECK(P("9", c) == P("2", c));
    Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly r = random_poly(rng, c, 5, 3);
        CHECK(P(to_string(r, c), c) == r);
    }
    try {
        P("1 + w", c);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.col() == 5);
    }
    CHECK_THROWS_AS(P("", c), ParseError);
    CHECK_THROWS_AS(P("x^", c), ParseError);
    CHECK_THROWS_AS(P("2 x", c), ParseError);
}
