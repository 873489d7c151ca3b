#include "doctest.h"

#include "qca/ascent.hpp"
#include "qca/descent.hpp"
#include "qca/random.hpp"

using namespace qca;

static PolyMatrix M(const std::string& s, const RingCtx& c) { return parse_matrix(s, c); }

TEST_CASE("embed") {
    auto c = make_ctx(3, {"y"});
    Form f = make_quadratic(M("1,y;0,2", c), 1);
    Form e = embed(f, "z");
    CHECK(e.ctx().vars == std::vector<std::string>{"y", "z"});
    CHECK(substitute_one(e.m, "z") == f.m);
    Unitary u{Flavor::LambdaMinus, gen_X(M("y", c))};
    CHECK(substitute_one(embed(u, "z").m, "z") == u.m);
    CHECK_THROWS_AS(embed(f, "y"), DomainError);
}

TEST_CASE("ascend_form examples") {
    auto c3 = make_ctx(3, {});
    Unitary u = ascend_form(make_quadratic(M("1", c3), 1), "z");
    CHECK(u.flavor == Flavor::EtaPlus);
    CHECK(u.m == M("2*z+2, 2*z+1; 2*z+1, 2*z+2", u.ctx()));
    CHECK(substitute_one(u.m, "z").is_identity());

    for (uint32_t p : {2u, 5u}) {
        auto c = make_ctx(p, {});
        Unitary e = ascend_form(eta_form(c, 1, -1), "z");
        CHECK(substitute_one(e.m, "z").is_identity());
        CHECK(boundary_class(e, "z").is_zero());
    }
    auto c2 = make_ctx(2, {});
    Unitary a = ascend_form(make_quadratic(M("1,1;0,1", c2), -1), "z");
    CHECK(check_eta(a.m, -1));
    CHECK(boundary_class(a, "z").to_string() == "1 in Z/2");
    CHECK_THROWS_AS(ascend_form(make_quadratic(M("1,0;0,0", c3), 1), "z"), DomainError);
}

TEST_CASE("round trip from forms") {
    Rng rng(21);
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        auto c = make_ctx(p, {});
        for (int s : {-1, 1})
            for (int i = 0; i < 6; ++i) {
                size_t dim = 1 + rng() % 6;
                if ((p == 2 || s < 0) && dim % 2) ++dim;
                Form phi = random_quadratic_fp(rng, c, dim, s);
                Unitary u = ascend_form(phi, "z");
                CHECK(u.flavor == make_flavor(true, s));
                CHECK(substitute_one(u.m, "z").is_identity());
                CHECK(boundary_class(u, "z") == witt_class(phi));
                if (p > 2) {
                    Form delta = assoc(phi);
                    Unitary h = ascend_form(delta, "z");
                    CHECK(h.flavor == make_flavor(false, s));
                    CHECK(boundary_class(h, "z") == witt_class(delta));
                }
            }
    }
}

TEST_CASE("hermitian ascent of unitaries") {
    auto c = make_ctx(5, {});
    Form h = ascend_unitary_hermitian(Unitary{Flavor::EtaMinus, gen_H(c, 1, -1)}, "z");
    CHECK(h.sign == 1);
    CHECK(h.m == M("0,-1;-1,0", h.ctx()));
    Form i = ascend_unitary_hermitian(Unitary{Flavor::EtaMinus, PolyMatrix::identity(c, 2)}, "z");
    CHECK(i.m == M("0,-z;-z^-1,0", i.ctx()));
    CHECK(witt_class(make_hermitian(substitute_one(i.m, "z"), 1)).is_zero());
    CHECK_THROWS_AS(ascend_unitary_hermitian(Unitary{Flavor::EtaMinus, M("2,0;0,2", c)}, "z"), DomainError);

    Rng rng(22);
    for (uint32_t p : {2u, 3u, 7u}) {
        auto cy = make_ctx(p, {"y"});
        for (int s : {-1, 1})
            for (int k = 0; k < 4; ++k) {
                size_t q = 1 + rng() % 2;
                Unitary u{make_flavor(true, s), eval_circuit(random_circuit(rng, cy, q, s, 5, 1, true))};
                Form f = ascend_unitary_hermitian(u, "z");
                CHECK(f.sign == -s);
                CHECK(is_even(f));
                CHECK(is_unit(determinant(f.m)));
                Form t = ascend_unitary_quadratic(u, "z");
                CHECK(t.sign == -s);
                CHECK(assoc(t).m == f.m);
            }
    }
}

TEST_CASE("quadratic ascent of unitaries") {
    for (uint32_t p : {2u, 3u}) {
        auto c = make_ctx(p, {});
        Form t = ascend_unitary_quadratic(Unitary{Flavor::EtaMinus, gen_H(c, 1, -1)}, "z");
        CHECK(assoc(t).m == M("0,-1;-1,0", t.ctx()));
        CHECK(witt_class(make_quadratic(substitute_one(t.m, "z"), t.sign)).is_zero());
        Form e = ascend_unitary_quadratic(Unitary{Flavor::EtaMinus, PolyMatrix::identity(c, 2)}, "z");
        CHECK(witt_class(make_quadratic(substitute_one(e.m, "z"), e.sign)).is_zero());
    }
}

TEST_CASE("round trip from unitaries") {
    Rng rng(23);
    // cluster QCA along y
    auto c2 = make_ctx(2, {"y"});
    Unitary cl{Flavor::EtaMinus, M("y+y^-1, y+1+y^-1; y+1+y^-1, y+y^-1", c2)};
    Unitary back = descend_form(ascend_unitary_hermitian(cl, "z"), "z");
    CHECK(back.flavor == Flavor::EtaMinus);
    CHECK(boundary_class(back, "y").to_string() == "1 in Z/2");

    for (uint32_t p : {2u, 3u, 5u}) {
        auto c0 = make_ctx(p, {});
        auto cy = make_ctx(p, {"y"});
        for (int s : {-1, 1})
            for (int k = 0; k < 3; ++k) {
                size_t dim = 1 + rng() % 3;
                if ((p == 2 || s < 0) && dim % 2) ++dim;
                Unitary seed = ascend_form(random_quadratic_fp(rng, c0, dim, s), "y");
                PolyMatrix g = eval_circuit(random_circuit(rng, cy, seed.q(), s, 3, 1, true));
                Unitary u{seed.flavor, g * seed.m};
                Unitary d = descend_form(ascend_unitary_hermitian(u, "z"), "z");
                CHECK(d.flavor == u.flavor);
                CHECK(boundary_class(d, "y") == boundary_class(u, "y"));
            }
    }
}

TEST_CASE("the up-down square anticommutes") {
    Rng rng(24);
    for (uint32_t p : {3u, 5u}) {
        auto c0 = make_ctx(p, {});
        auto cy = make_ctx(p, {"y"});
        for (int k = 0; k < 2; ++k) {
            Form phi0 = random_quadratic_fp(rng, c0, 2, 1);
            PolyMatrix e = random_invertible(rng, cy, 2, 3, 1);
            Form phi = make_quadratic(adjoint(e) * embed(phi0, "y").m * e, 1);
            // S after descending the z-ascent along y
            Form r1 = assoc(boundary_form(ascend_form(phi, "z"), "y"));
            // descending the z-ascent of S along y
            Form r2 = boundary_form(ascend_form(assoc(phi), "z"), "y");
            auto at_one = [](const Form& f) {
                return f.dim() ? witt_class(make_hermitian(substitute_all_one(f.m), f.sign)) : witt_class(f);
            };
            CHECK(at_one(r1) == -at_one(r2));
        }
    }
}
