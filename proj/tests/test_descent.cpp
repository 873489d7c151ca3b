#include "doctest.h"

#include "qca/descent.hpp"
#include "qca/pid.hpp"
#include "qca/random.hpp"

using namespace qca;

static PolyMatrix M(const std::string& s, const RingCtx& c) { return parse_matrix(s, c); }
static PolyMatrix cluster(const RingCtx& c) { return M("z+z^-1, z+1+z^-1; z+1+z^-1, z+z^-1", c); }

TEST_CASE("boundary module examples") {
    auto c = make_ctx(3, {"z"});
    Unitary id{Flavor::LambdaMinus, PolyMatrix::identity(c, 2)};
    BoundaryModule b0 = boundary_module_of_unitary(id, "z");
    CHECK(b0.n == 0);
    CHECK(b0.rank() == 0);
    CHECK(boundary_class(id, "z").is_zero());

    Unitary x{Flavor::LambdaMinus, gen_X(M("z", c))};
    BoundaryModule bx = boundary_module_of_unitary(x, "z");
    CHECK(bx.n == 0);
    CHECK(bx.rank() == 2);
    Form fx = boundary_form(bx, x.flavor);
    CHECK(fx.kind == FormKind::Hermitian);
    CHECK(congruent(fx, inverse(bx.basis)).m == lambda_matrix(bx.base, 1, -1));
    CHECK(witt_class(fx).is_zero());

    auto c2 = make_ctx(2, {"z"});
    Unitary cl{Flavor::EtaMinus, cluster(c2)};
    BoundaryModule bc = boundary_module_of_unitary(cl, "z");
    CHECK(bc.n == 1);
    CHECK(bc.rank() == 2);
    Form fc = boundary_form(bc, cl.flavor);
    CHECK(fc.kind == FormKind::Quadratic);
    WittClass w = witt_class(fc);
    CHECK(w.to_string() == "1 in Z/2");
    CHECK(witt_class(boundary_via_separator(cl, "z")) == w);
    CHECK(witt_class(boundary_via_separator(x, "z")).is_zero());
    CHECK(witt_class(boundary_via_separator(id, "z")).is_zero());

    CHECK_THROWS_AS(boundary_module_of_unitary(cl, "z", 0), DomainError);
    auto c3v = make_ctx(2, {"x", "y", "z"});
    CHECK_THROWS_AS(boundary_module_of_unitary(Unitary{Flavor::EtaMinus, PolyMatrix::identity(c3v, 2)}, "z"),
                    UnsupportedDimension);
}

TEST_CASE("boundary class of the cluster QCA under changes") {
    auto c = make_ctx(2, {"z"});
    Unitary cl{Flavor::EtaMinus, cluster(c)};
    WittClass one = boundary_class(cl, "z");
    for (int32_t n : {1, 2, 4}) {
        Form f = boundary_form(cl, "z", n);
        CHECK(is_nonsingular(f));
        CHECK(witt_class(f) == one);
    }
    Unitary st{Flavor::EtaMinus, hat_dsum(cl.m, PolyMatrix::identity(c, 4))};
    CHECK(boundary_class(st, "z") == one);
    Unitary two{Flavor::EtaMinus, hat_dsum(cl.m, cl.m)};
    CHECK(boundary_class(two, "z").is_zero());

    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        PolyMatrix g = eval_circuit(random_circuit(rng, c, 1, -1, 3, 2, true));
        CHECK(boundary_class(Unitary{Flavor::EtaMinus, g * cl.m}, "z") == one);
        CHECK(boundary_class(Unitary{Flavor::EtaMinus, cl.m * g}, "z") == one);
        CHECK(witt_class(boundary_via_separator(Unitary{Flavor::EtaMinus, g * cl.m * g}, "z")) == one);
    }
}

TEST_CASE("elementary unitaries have boundary class zero") {
    Rng rng(8);
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        auto c = make_ctx(p, {"z"});
        for (int s : {-1, 1})
            for (bool eta : {false, true}) {
                if (eta && s == 1 && p == 2) continue;
                for (int i = 0; i < 4; ++i) {
                    size_t q = 1 + rng() % 2;
                    Unitary u{make_flavor(eta, s), eval_circuit(random_circuit(rng, c, q, s, 6, 1, eta))};
                    Form f = boundary_form(u, "z");
                    CHECK(is_nonsingular(f));
                    CHECK(witt_class(f).is_zero());
                    CHECK(witt_class(boundary_via_separator(u, "z")).is_zero());
                }
            }
    }
}

TEST_CASE("boundary over a one-variable base") {
    auto c = make_ctx(2, {"y", "z"});
    Unitary cl{Flavor::EtaMinus, cluster(c)};
    CHECK(boundary_class(cl, "z").to_string() == "1 in Z/2");
    // cluster along y: the z-boundary sees an elementary y-unitary
    Unitary cy{Flavor::EtaMinus, M("y+y^-1, y+1+y^-1; y+1+y^-1, y+y^-1", c)};
    CHECK(boundary_class(cy, "z").is_zero());
    Rng rng(9);
    for (int i = 0; i < 5; ++i) {
        PolyMatrix g = eval_circuit(random_circuit(rng, c, 1, -1, 3, 1, true));
        Unitary u{Flavor::EtaMinus, g * cl.m};
        Form f = boundary_form(u, "z");
        CHECK(f.ctx().vars == std::vector<std::string>{"y"});
        CHECK(is_nonsingular(f));
        CHECK(witt_class(f).to_string() == "1 in Z/2");
    }
}

TEST_CASE("formation to unitary") {
    for (uint32_t p : {2u, 3u}) {
        auto c = make_ctx(p, {});
        for (int s : {-1, 1}) {
            PolyMatrix id = PolyMatrix::identity(c, 4);
            Unitary u = formation_to_unitary(id.block(0, 0, 4, 2), s);
            CHECK(check_eta(u.m, s));
            CHECK(u.m.block(0, 0, 4, 2) == id.block(0, 0, 4, 2));
            Unitary h = formation_to_unitary(id.block(0, 2, 4, 2), s);
            CHECK(check_eta(h.m, s));
            CHECK(h.m.block(0, 0, 4, 2) == id.block(0, 2, 4, 2));
        }
        PolyMatrix bad = PolyMatrix::identity(c, 4).block(0, 0, 4, 2);
        bad(1, 1) = bad.zero();
        bad(2, 1) = bad.scalar(1);
        CHECK_THROWS_AS(formation_to_unitary(bad, -1), DomainError);
    }
}

TEST_CASE("lagrangian pair examples") {
    auto c = make_ctx(3, {"z"});
    LagrangianPair lp = lagrangian_pair_from_form(lambda_form(c, 1, -1), "z");
    CHECK(lp.n == 0);
    CHECK(lp.l.cols() == 0);
    CHECK(descend_form(lambda_form(c, 1, -1), "z").m.rows() == 0);

    auto c2 = make_ctx(2, {"z"});
    CHECK_THROWS_AS(lagrangian_pair_from_form(make_hermitian(M("1", c2), 1), "z"), DomainError);
    CHECK_THROWS_AS(lagrangian_pair_from_form(make_hermitian(M("0,1+z;1+z^-1,0", c), -1), "z"), DomainError);

    Rng rng(10);
    for (uint32_t p : {2u, 3u, 5u}) {
        auto cp = make_ctx(p, {"z"});
        for (int s : {-1, 1})
            for (int i = 0; i < 4; ++i) {
                PolyMatrix e = random_invertible(rng, cp, 2 * (1 + rng() % 2), 4, 1);
                Form d = congruent(lambda_form(cp, e.rows() / 2, s), e);
                LagrangianPair pr = lagrangian_pair_from_form(d, "z");
                size_t m = pr.m_rank;
                CHECK(pr.sign == -s);
                CHECK(pr.l.rows() == 2 * m);
                Form tr = eta_form(pr.l.ctx(), m, pr.sign);
                CHECK(is_sublagrangian(tr, pr.l));
                CHECK(is_sublagrangian(tr, pr.lstar));
                if (m) CHECK(rank(hstack(pr.l, pr.lstar)) == 2 * m);
                if (m) CHECK(is_unit(determinant(hstack(pr.l, pr.lstar))));
                Unitary u = descend_form(d, "z");
                CHECK(u.flavor == make_flavor(true, -s));
                CHECK(check_eta(u.m, -s));
            }
    }
}

TEST_CASE("descent over a one-variable base") {
    Rng rng(11);
    auto c = make_ctx(3, {"y", "z"});
    for (int i = 0; i < 3; ++i) {
        PolyMatrix e = random_invertible(rng, c, 2, 3, 1);
        Form d = congruent(lambda_form(c, 1, -1), e);
        Unitary u = descend_form(d, "z");
        CHECK(u.ctx().vars == std::vector<std::string>{"y"});
        if (u.m.rows()) CHECK(boundary_class(u, "y").is_zero());
    }
}
