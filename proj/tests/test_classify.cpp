#include "doctest.h"

#include <chrono>

#include "qca/classify.hpp"
#include "qca/descent.hpp"
#include "qca/random.hpp"

using namespace qca;

static PolyMatrix M(const std::string& s, const RingCtx& c) { return parse_matrix(s, c); }

TEST_CASE("table") {
    using G = WittClass::Group;
    CHECK(table_group(3, 2) == G::Z2);
    CHECK(table_group(4, 3) == G::Zero);
    CHECK(table_group(7, 5) == G::Z2xZ2);
    CHECK(table_group(3, 7) == G::Z4);
    CHECK(table_group(1, 2) == G::Zero);
    CHECK(table_group(2, 3) == G::Zero);
    CHECK(table_group(5, 2) == G::Z2);
    CHECK(table_group(5, 3) == G::Zero);
    CHECK_THROWS_AS(table_group(3, 9), DomainError);
}

TEST_CASE("classify examples") {
    auto c = make_ctx(3, {"z"});
    ClassDescriptor x = classify(Unitary{Flavor::LambdaMinus, gen_X(M("z", c))});
    CHECK(x.value.is_zero());
    REQUIRE(x.witness);
    CHECK(eval_circuit(*x.witness) == gen_X(M("z", c)));
    CHECK(circuit_to_string(*x.witness) == "X(z)");

    auto c2 = make_ctx(2, {"z"});
    Representative cl = representative(2, 1, "1");
    CHECK(cl.u.m == M("z+z^-1, z+1+z^-1; z+1+z^-1, z+z^-1", c2));
    ClassDescriptor k = classify(cl.u);
    CHECK(k.value.to_string() == "1 in Z/2");
    CHECK(k.source == ClassDescriptor::Source::Computed);
    CHECK(classify(cl.u, &cl.prov).value == k.value);

    auto c0 = make_ctx(5, {});
    CHECK(classify(Unitary{Flavor::EtaPlus, gen_H(c0, 2, 1)}).value.is_zero());

    auto c3v = make_ctx(3, {"x", "y", "z"});
    CHECK_THROWS_AS(classify(Unitary{Flavor::LambdaMinus, PolyMatrix::identity(c3v, 2)}), UnsupportedDimension);
    CHECK_THROWS_AS(classify(Unitary{Flavor::LambdaMinus, M("1,z;0,1+z", c)}), DomainError);
}

TEST_CASE("two-dimensional lambda- unitaries classify to zero") {
    Rng rng(31);
    for (uint32_t p : {2u, 3u, 5u}) {
        auto c = make_ctx(p, {"x", "y"});
        for (int i = 0; i < 3; ++i) {
            Unitary u{Flavor::LambdaMinus, eval_circuit(random_circuit(rng, c, 1 + rng() % 2, -1, 6, 1, false))};
            ClassDescriptor d = classify(u);
            CHECK(d.value.is_zero());
            CHECK(d.details.size() == 3);
        }
    }
    // the cluster state along y, seen in two dimensions
    auto c = make_ctx(2, {"x", "y"});
    Unitary cy{Flavor::EtaMinus, M("y+y^-1, y+1+y^-1; y+1+y^-1, y+y^-1", c)};
    ClassDescriptor d = classify(cy);
    CHECK(d.value.is_zero());
    CHECK(d.details[0].find("1 in Z/2") != std::string::npos);
}

TEST_CASE("classify is invariant under circuits, stabilization and coarse-graining") {
    Rng rng(32);
    auto c = make_ctx(2, {"z"});
    Representative cl = representative(2, 1, "1");
    for (int i = 0; i < 5; ++i) {
        PolyMatrix g = eval_circuit(random_circuit(rng, c, 1, -1, 4, 1, true));
        PolyMatrix h = eval_circuit(random_circuit(rng, c, 1, -1, 4, 1, true));
        CHECK(classify(Unitary{Flavor::EtaMinus, g * cl.u.m * h}).value == cl.prov.seed_class);
    }
    CHECK(classify(Unitary{Flavor::EtaMinus, hat_dsum(cl.u.m, PolyMatrix::identity(c, 2))}).value ==
          cl.prov.seed_class);
    for (int b : {2, 3})
        CHECK(classify(Unitary{Flavor::EtaMinus, coarse_grain(cl.u.m, 0, b)}).value == cl.prov.seed_class);
    auto c5 = make_ctx(5, {"z"});
    for (int i = 0; i < 4; ++i) {
        Unitary u{Flavor::LambdaMinus, eval_circuit(random_circuit(rng, c5, 2, -1, 6, 1, false))};
        CHECK(classify(u).value.is_zero());
        CHECK(classify(Unitary{u.flavor, coarse_grain(u.m, 0, 2)}).value.is_zero());
    }
}

TEST_CASE("representatives") {
    auto t0 = std::chrono::steady_clock::now();
    Representative r = representative(3, 3, "1");
    CHECK(r.u.ctx().vars == std::vector<std::string>{"x", "y", "z"});
    CHECK(check_lambda(r.u.m, -1));
    CHECK(check_eta(r.u.m, -1));
    CHECK(substitute_all_one(r.u.m).is_identity());
    CHECK(r.prov.steps.size() == 3);
    ClassDescriptor d = classify(r.u, &r.prov);
    CHECK(d.source == ClassDescriptor::Source::Certified);
    CHECK(d.value.to_string() == "1 in Z/4");
    CHECK(d.to_string().find("certified") != std::string::npos);
    CHECK_THROWS_AS(classify(r.u), UnsupportedDimension);
    Representative other = representative(3, 3, "3");
    CHECK_THROWS_AS(classify(r.u, &other.prov), DomainError);

    Representative r2 = representative(2, 3, "1");
    CHECK(check_eta(r2.u.m, -1));
    CHECK(classify(r2.u, &r2.prov).value.to_string() == "1 in Z/2");
    Representative r5 = representative(5, 3, "(1,1)");
    CHECK(check_eta(r5.u.m, -1));
    CHECK(r5.prov.seed_class.to_string() == "(1,1) in Z/2+Z/2");
    CHECK(representative(7, 2, "0").u.m.is_identity());
    CHECK_THROWS_AS(representative(3, 2, "1"), DomainError);
    CHECK_THROWS_AS(representative(3, 3, "4"), DomainError);
    CHECK_THROWS_AS(representative(5, 3, "1,2"), DomainError);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 30.0);
}

TEST_CASE("d = 1 chain seeds round trip through the boundary") {
    for (uint32_t p : {3u, 5u, 7u}) {
        auto c0 = make_ctx(p, {});
        for (int a = 0; a < 4; ++a) {
            WittClass w = parse_class_element(p, 1, FormKind::Quadratic, p % 4 == 3 ? std::to_string(a)
                                                                                    : "(" + std::to_string(a / 2) + "," +
                                                                                          std::to_string(a % 2) + ")");
            Form f = seed_form(w);
            if (f.dim() == 0) continue;
            CHECK(witt_class(f) == w);
        }
    }
}

TEST_CASE("blend certificates") {
    auto c = make_ctx(3, {"z"});
    Rng rng(33);
    Circuit eps{c, -1, 2, {Gate{Gate::Kind::Fixed, 0, random_gl_fp(rng, make_ctx(3, {}), 2).retyped(c)}}};
    eps.gates[0].mat = hat_dsum(gen_H(c, 1, -1), gen_X(M("2", c)));
    BlendCertificate e = blend_certificate(eps, "z");
    CHECK(verify_blend(e));

    Circuit zc{c, -1, 1, {Gate{Gate::Kind::Z, 0, M("z+z^-1", c)}, Gate{Gate::Kind::H, 0, {}}}};
    BlendCertificate b = blend_certificate(zc, "z");
    CHECK(b.n == 1);
    CHECK(verify_blend(b));
    BlendCertificate broken = b;
    broken.window(0, 0) = broken.window(0, 0) + broken.window.scalar(1);
    CHECK_FALSE(verify_blend(broken));

    Circuit shift{c, -1, 1, {Gate{Gate::Kind::X, 0, M("z", c)}}};
    CHECK_THROWS_AS(blend_certificate(shift, "z"), DomainError);

    auto cy = make_ctx(5, {"y", "z"});
    for (int i = 0; i < 5; ++i) {
        Circuit r = random_circuit(rng, cy, 1, -1, 5, 1, false);
        std::vector<Gate> keep;
        for (const Gate& g : r.gates)
            if (g.kind != Gate::Kind::X && g.kind != Gate::Kind::Fixed) keep.push_back(g);
        r.gates = keep;
        CHECK(verify_blend(blend_certificate(r, "z")));
    }
}

TEST_CASE("coarse-graining kills classes") {
    auto c2 = make_ctx(2, {});
    Form arf = make_quadratic(M("1,1;0,1", c2), -1);
    CHECK(cg_kill_check(arf, 2));
    CHECK_FALSE(cg_kill_check(arf, 1));
    auto c3 = make_ctx(3, {});
    Form one = make_quadratic(M("1", c3), 1);
    CHECK(cg_kill_check(one, 4));
    CHECK_FALSE(cg_kill_check(one, 2));
    auto c5 = make_ctx(5, {});
    CHECK(cg_kill_check(make_quadratic(M("1,0;0,2", c5), 1), 2));
    Rng rng(34);
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u})
        for (int i = 0; i < 5; ++i) {
            auto c = make_ctx(p, {});
            size_t dim = 2 + 2 * (rng() % 2);
            CHECK(cg_kill_check(random_quadratic_fp(rng, c, dim, 1), 4));
        }
}
