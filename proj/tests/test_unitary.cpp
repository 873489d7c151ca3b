#include "doctest.h"

#include "qca/random.hpp"
#include "qca/unitary.hpp"

using namespace qca;

static PolyMatrix M(const std::string& s, const RingCtx& c) { return parse_matrix(s, c); }

static PolyMatrix cluster(const RingCtx& c) { return M("z+z^-1, z+1+z^-1; z+1+z^-1, z+z^-1", c); }

TEST_CASE("flavor check examples") {
    for (uint32_t p : {2u, 3u, 5u}) {
        auto c = make_ctx(p, {"z"});
        CHECK(check_lambda(gen_H(c, 1, -1), -1));
        CHECK(check_eta(gen_H(c, 1, -1), -1));
    }
    auto c2 = make_ctx(2, {"z"});
    PolyMatrix z1 = gen_Z(M("1", c2), -1);
    CHECK(z1 == M("1,0;1,1", c2));
    CHECK(check_lambda(z1, -1));
    CHECK_FALSE(check_eta(z1, -1));
    CHECK(check_eta(cluster(c2), -1));
    CHECK_FALSE(check_lambda(M("1,z;0,1+z", c2), -1));
    CHECK_FALSE(check_lambda(M("1,0,0", c2), -1));
    CHECK_THROWS_AS(make_unitary(z1, Flavor::EtaMinus), DomainError);
}

TEST_CASE("generators") {
    auto c = make_ctx(3, {"z"});
    CHECK(gen_X(M("z", c)) == M("z,0;0,z", c));
    CHECK(check_lambda(gen_X(M("z", c)), -1));
    CHECK_THROWS_AS(gen_X(M("1+z", c)), NotInvertible);
    CHECK_THROWS_AS(gen_Z(M("z", c), -1), DomainError);
    CHECK(check_lambda(gen_Z(M("z+z^-1", c), -1), -1));
    CHECK(check_lambda(gen_Z(M("z-z^-1", c), 1), 1));
    auto c2 = make_ctx(2, {});
    PolyMatrix zh = gen_Z(M("1", c2), -1) * gen_H(c2, 1, -1);
    CHECK((zh * zh * zh).is_identity());
}

TEST_CASE("H hat-sum H as a product of Z, Zdag and X") {
    for (uint32_t p : {2u, 3u, 5u, 7u})
        for (int s : {-1, 1}) {
            auto c = make_ctx(p, {});
            int pm = -s;
            PolyMatrix a = PolyMatrix::from_ints(c, {{1, 0, 0, pm}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
            PolyMatrix b = PolyMatrix::from_ints(c, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 1, 0}, {s, 0, 0, 1}});
            PolyMatrix d = PolyMatrix::from_ints(c, {{0, 1, 0, 0}, {pm, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, pm, 0}});
            PolyMatrix h = gen_H(c, 1, s);
            CHECK(a * b * a * d == hat_dsum(h, h));
            CHECK(recognize_gate(a, s).kind == Gate::Kind::Zdag);
            CHECK(recognize_gate(b, s).kind == Gate::Kind::Z);
            CHECK(recognize_gate(d, s).kind == Gate::Kind::X);
            // the two Z-type factors are tilde generators
            PolyMatrix th = b.block(2, 0, 2, 2);
            PolyMatrix mu(c, 2, 2);
            mu(1, 0) = th(1, 0);
            CHECK(gen_Ztilde(mu, s) == b);
        }
}

TEST_CASE("closed-form inverse and closure") {
    Rng rng(51);
    for (uint32_t p : {2u, 3u, 5u})
        for (int s : {-1, 1}) {
            auto c = make_ctx(p, {"x", "z"});
            for (int i = 0; i < 10; ++i) {
                size_t q = 1 + rng() % 2;
                PolyMatrix u = eval_circuit(random_circuit(rng, c, q, s, 6, 1, false));
                PolyMatrix v = eval_circuit(random_circuit(rng, c, q, s, 6, 1, true));
                CHECK(check_lambda(u, s));
                CHECK(check_eta(v, s));
                CHECK((unitary_inverse(u, s) * u).is_identity());
                CHECK(check_lambda(u * v, s));
                CHECK(check_eta(v * unitary_inverse(v, s), s));
                CHECK(check_lambda(hat_dsum(u, v), s));
                CHECK(check_eta(coarse_grain(v, 0, 2), s));
                CHECK(check_lambda(trc_partner(u), s));
                CHECK(trc_partner(trc_partner(u)) == u);
                if (p != 2) CHECK(check_eta(u, s) == check_lambda(u, s));
            }
        }
}

TEST_CASE("trc partner examples") {
    auto c = make_ctx(5, {"z"});
    CHECK(trc_partner(gen_H(c, 1, -1)) == M("0,-1;1,0", c));
    PolyMatrix x = gen_X(M("z,1;0,1", c));
    CHECK(trc_partner(x) == x);
}

TEST_CASE("circuits") {
    auto c = make_ctx(3, {"z"});
    Circuit k{c, -1, 2, {Gate{Gate::Kind::H, 1, {}}, Gate{Gate::Kind::X, 0, M("z", c)}}};
    PolyMatrix u = eval_circuit(k);
    CHECK(u == gen_H_slot(c, 2, -1, 1) * gen_X(M("z,0;0,1", c)));
    CHECK((eval_circuit(inverse_circuit(k)) * u).is_identity());
    CHECK(circuit_to_string(k) == "H[2] * X(z)");
}

TEST_CASE("Pauli bridge") {
    PauliSpec shift;
    shift.p = 2;
    shift.d = 1;
    shift.q = 1;
    shift.images = {{PauliFactor{'X', 1, {1}, 1}}, {PauliFactor{'Z', 1, {1}, 1}}};
    Unitary u = pauli_to_unitary(shift);
    auto c = make_ctx(2, {"z"});
    CHECK(u.m == gen_X(M("z", c)));
    PauliSpec back = unitary_to_pauli(u.m);
    CHECK(same_pauli(back, shift));
    PauliSpec cl = unitary_to_pauli(cluster(c));
    // image of Z: Y at -1, X at 0, Y at +1
    PolyMatrix zc = cluster(c).col(1);
    CHECK(zc == M("z+1+z^-1; z+z^-1", c));
    CHECK(cl.images[1].size() == 5);
    PauliSpec bad = shift;
    bad.images[1] = {PauliFactor{'X', 1, {0}, 1}};
    CHECK_THROWS_AS(pauli_to_unitary(bad), DomainError);
}

TEST_CASE("Pauli display with three coordinates") {
    // (1 + 2xy ; 1 + z^-1) is the image column of X^2_(1,1,0) X_(0,0,0) Z_(0,0,0) Z_(0,0,-1)
    PauliSpec s;
    s.p = 3;
    s.d = 3;
    s.q = 1;
    std::vector<PauliFactor> col = {PauliFactor{'X', 1, {1, 1, 0}, 2}, PauliFactor{'X', 1, {0, 0, 0}, 1},
                                    PauliFactor{'Z', 1, {0, 0, 0}, 1}, PauliFactor{'Z', 1, {0, 0, -1}, 1}};
    // complete to a unitary: second column chosen so that the pairing is 1
    auto c = make_ctx(3, {"x", "y", "z"});
    PolyMatrix first = M("1 + 2*x*y; 1 + z^-1", c);
    s.images = {col, {}};
    PauliSpec probe = s;
    probe.images[1] = {PauliFactor{'Z', 1, {0, 0, 0}, 1}};
    // only check the transcription of the first column; the completion is not unitary
    PolyMatrix m = [&] {
        try {
            return pauli_to_unitary(probe).m;
        } catch (const DomainError&) {
            return PolyMatrix();
        }
    }();
    CHECK(m.rows() == 0);
    PauliSpec round = unitary_to_pauli(hstack(first, M("0;1", c)));
    CHECK(round.images[0].size() == 4);
    PauliSpec expect = probe;
    expect.images[1] = {PauliFactor{'Z', 1, {0, 0, 0}, 1}};
    CHECK(same_pauli(round, expect));
}

TEST_CASE("time reversal examples") {
    auto c = make_ctx(2, {"z"});
    PolyMatrix shift = gen_X(M("z", c)) * gen_Ztilde(M("z", c), -1);
    RealNormalization id = normalize_real(shift);
    CHECK(id.u == shift);
    CHECK(id.left.gates.empty());
    CHECK(id.right.gates.empty());
    RealNormalization cl = normalize_real(cluster(c));
    CHECK(check_eta(cl.u, -1));
    CHECK(eval_circuit(cl.left) * cl.u * eval_circuit(cl.right) == cluster(c));
    RealNormalization z = normalize_real(gen_Z(M("1", c), -1));
    CHECK(z.u.is_identity());
    REQUIRE(z.left.gates.size() == 1);
    CHECK(z.left.gates[0].kind == Gate::Kind::Z);
    CHECK(z.left.gates[0].mat == M("1", c));
    CHECK_THROWS_AS(normalize_real(gen_H(make_ctx(3, {}), 1, -1)), DomainError);
}

TEST_CASE("time reversal on random lambda-unitaries") {
    Rng rng(52);
    for (int nv = 1; nv <= 2; ++nv) {
        auto c = nv == 1 ? make_ctx(2, {"z"}) : make_ctx(2, {"x", "y"});
        for (int i = 0; i < 30; ++i) {
            size_t q = 1 + rng() % 2;
            Circuit k = random_circuit(rng, c, q, -1, 8, 1, false);
            k.gates.insert(k.gates.begin() + long(rng() % k.gates.size()), Gate{Gate::Kind::Z, 0, PolyMatrix::identity(c, 1)});
            PolyMatrix v = eval_circuit(k);
            RealNormalization r = normalize_real(v);
            CHECK(check_eta(r.u, -1));
            CHECK(eval_circuit(r.left) * r.u * eval_circuit(r.right) == v);
        }
    }
}

TEST_CASE("decompose_1d examples") {
    auto c = make_ctx(3, {"z"});
    Circuit x = decompose_1d(gen_X(M("z", c)));
    REQUIRE(x.gates.size() == 1);
    CHECK(circuit_to_string(x) == "X(z)");
    Circuit h = decompose_1d(gen_H(c, 1, -1));
    CHECK(circuit_to_string(h) == "H");
    PolyMatrix u = gen_Z(M("1+z+z^-1", c), -1) * gen_H(c, 1, -1) * gen_X(M("z^2", c));
    CHECK(eval_circuit(decompose_1d(u)) == u);
    CHECK_THROWS_AS(decompose_1d(M("1,z;0,1", c)), DomainError);
}

TEST_CASE("decompose_1d round trip on random circuits") {
    Rng rng(53);
    for (uint32_t p : {2u, 3u, 5u}) {
        auto c = make_ctx(p, {"z"});
        for (int i = 0; i < 20; ++i) {
            size_t q = 1 + rng() % 3;
            PolyMatrix u = eval_circuit(random_circuit(rng, c, q, -1, 1 + int(rng() % 12), 1, false));
            Circuit d = decompose_1d(u);
            CHECK(eval_circuit(d) == u);
        }
        auto c0 = make_ctx(p, {});
        for (int i = 0; i < 10; ++i) {
            PolyMatrix u = eval_circuit(random_circuit(rng, c0, 2, -1, 8, 0, false));
            CHECK(eval_circuit(decompose_1d(u)) == u);
        }
    }
}
