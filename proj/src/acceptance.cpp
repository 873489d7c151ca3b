#include "qca/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

#include "qca/ascent.hpp"
#include "qca/classify.hpp"
#include "qca/descent.hpp"
#include "qca/io.hpp"
#include "qca/random.hpp"

namespace qca {

namespace {

// Thrown by `need` inside a criterion; the message becomes the FAIL detail.
struct Failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& what) {
    if (!ok) throw Failed(what);
}

std::string pstr(uint32_t p) { return "p=" + std::to_string(p); }

size_t even_dim(Rng& rng, uint32_t p, int s, size_t max_dim) {
    size_t dim = 1 + rng() % max_dim;
    if ((p == 2 || s < 0) && dim % 2) dim = dim == max_dim ? dim - 1 : dim + 1;
    return dim;
}

Form repeat(const Form& f, int k) {
    Form r = f;
    for (int i = 1; i < k; ++i) r = dsum(r, f);
    return r;
}

int order_by_sums(const Form& f) {
    for (int k = 1; k <= 8; ++k)
        if (witt_class_f(repeat(f, k)).is_zero()) return k;
    return -1;
}

PolyMatrix cluster(const RingCtx& c) { return parse_matrix("z+z^-1, z+1+z^-1; z+1+z^-1, z+z^-1", c); }

// Class data shared by criteria 1 and 2.
struct WittSamples {
    std::vector<std::pair<Form, WittClass>> items;
};

std::string crit_witt(Rng& rng, WittSamples& out) {
    const uint32_t primes[] = {2, 3, 5, 7, 13, 17};
    size_t n = 0;
    for (uint32_t p : primes) {
        auto c = make_ctx(p, {});
        for (int i = 0; i < 500; ++i) {
            int s = rng() % 2 ? 1 : -1;
            Form phi = random_quadratic_fp(rng, c, even_dim(rng, p, s, 8), s);
            Form psi = random_quadratic_fp(rng, c, even_dim(rng, p, s, 8), s);
            WittClass a = witt_class_f(phi), b = witt_class_f(psi);
            need(witt_class_f(dsum(phi, psi)) == a + b, "additivity fails, " + pstr(p));
            need(witt_class_f(dsum(phi, negate(phi))).is_zero(), "phi + (-phi) != 0, " + pstr(p));
            need(witt_class_f(dsum(phi, eta_form(c, 1 + rng() % 2, s))) == a, "eta stabilization changes class, " + pstr(p));
            need(witt_class_f(congruent(phi, random_gl_fp(rng, c, phi.dim()))) == a, "congruence changes class, " + pstr(p));
            out.items.push_back({phi, a});
            ++n;
        }
        if (p == 2) {
            need(order_by_sums(make_quadratic(parse_matrix("1,1;0,1", c), -1)) == 2, "[I2 + eta1] does not have order 2");
        } else {
            int want = p % 4 == 3 ? 4 : 2;
            need(order_by_sums(make_quadratic(parse_matrix("1", c), 1)) == want,
                 "order of [diag(1)] is not " + std::to_string(want) + ", " + pstr(p));
        }
    }
    return std::to_string(n) + " forms";
}

std::string crit_exponent(const WittSamples& ws) {
    size_t n = 0;
    for (const auto& [phi, w] : ws.items) {
        uint32_t p = phi.ctx().p;
        need(w.times(4).is_zero(), "4 * class != 0 for " + w.to_string());
        need(witt_class_f(repeat(phi, 4)).is_zero(), "class of the 4-fold sum != 0, " + pstr(p));
        if (p == 2 || p % 4 == 1) {
            need(w.times(2).is_zero(), "2 * class != 0 for " + w.to_string());
            need(witt_class_f(dsum(phi, phi)).is_zero(), "class of the 2-fold sum != 0, " + pstr(p));
        }
        ++n;
    }
    return std::to_string(n) + " classes";
}

std::string crit_decompose(Rng& rng) {
    const uint32_t primes[] = {2, 3, 5};
    size_t total_tokens = 0;
    for (int i = 0; i < 200; ++i) {
        auto c = make_ctx(primes[i % 3], {"z"});
        size_t q = 1 + rng() % 3;
        int tokens = 1 + int(rng() % 30);
        Circuit k = random_circuit(rng, c, q, -1, tokens, 1, false);
        PolyMatrix u = eval_circuit(k);
        // keep the z-spread within 8 by dropping trailing tokens
        while (true) {
            auto [lo, hi] = z_spread(u, 0);
            if (hi - lo <= 8) break;
            k.gates.pop_back();
            u = eval_circuit(k);
        }
        total_tokens += k.gates.size();
        Circuit d = decompose_1d(u);
        need(eval_circuit(d) == u, "decompose_1d does not reproduce a " + std::to_string(2 * q) + "x" +
                                       std::to_string(2 * q) + " input, " + pstr(c.p));
    }
    return "200 circuits, " + std::to_string(total_tokens) + " input tokens";
}

// Random 1-variable unitary of the given flavor whose boundary class may be nonzero.
Unitary random_1var_unitary(Rng& rng, uint32_t p, bool eta, int s) {
    auto c0 = make_ctx(p, {});
    auto c = make_ctx(p, {"z"});
    Unitary seed;
    if (eta && p == 2 && rng() % 3 == 0) {
        seed = Unitary{Flavor::EtaMinus, cluster(c)};
    } else if (eta || p != 2) {
        Form phi = random_quadratic_fp(rng, c0, even_dim(rng, p, s, 3), s);
        seed = ascend_form(eta ? phi : assoc(phi), "z");
    } else {
        seed = Unitary{make_flavor(false, s), PolyMatrix::identity(c, 2)};
    }
    PolyMatrix g = eval_circuit(random_circuit(rng, c, seed.q(), s, 4, 1, eta));
    return Unitary{seed.flavor, g * seed.m};
}

std::vector<PolyMatrix> generators(Rng& rng, const RingCtx& c, size_t q, int s, bool eta) {
    PolyMatrix mu = random_matrix(rng, c, q, q, 2, 1);
    std::vector<PolyMatrix> g = {gen_H_slot(c, q, s, rng() % q), gen_X(random_invertible(rng, c, q, 2, 1)),
                                 gen_Ztilde(mu, s), gen_Zdag(s < 0 ? mu + adjoint(mu) : mu - adjoint(mu), s)};
    if (!eta) {
        PolyMatrix th = random_matrix(rng, c, q, q, 2, 1);
        th = s < 0 ? th + adjoint(th) : th - adjoint(th);
        if (c.p == 2 && s < 0) th = th + PolyMatrix::identity(c, q);   // theta = 1 is allowed over F_2
        g.push_back(gen_Z(th, s));
    }
    return g;
}

std::string crit_boundary(Rng& rng) {
    const uint32_t primes[] = {2, 3, 5, 7};
    size_t nonzero = 0;
    for (int i = 0; i < 100; ++i) {
        uint32_t p = primes[i % 4];
        bool eta = i % 3 != 2;
        int s = rng() % 2 ? 1 : -1;
        Unitary u = random_1var_unitary(rng, p, eta, s);
        const RingCtx& c = u.ctx();
        WittClass w = boundary_class(u, "z");
        if (!w.is_zero()) ++nonzero;
        std::string where = pstr(p) + ", " + flavor_name(u.flavor);
        for (const PolyMatrix& g : generators(rng, c, u.q(), s, eta)) {
            need(boundary_class(Unitary{u.flavor, g * u.m}, "z") == w, "left generator changes the class, " + where);
            need(boundary_class(Unitary{u.flavor, u.m * g}, "z") == w, "right generator changes the class, " + where);
            need(boundary_class(Unitary{u.flavor, g}, "z").is_zero(), "a generator has a nonzero class, " + where);
        }
        need(boundary_class(Unitary{u.flavor, hat_dsum(u.m, PolyMatrix::identity(c, 2))}, "z") == w,
             "stabilization changes the class, " + where);
        need(boundary_class(Unitary{u.flavor, PolyMatrix::identity(c, u.m.rows())}, "z").is_zero(),
             "identity has a nonzero class");
        int32_t n0 = boundary_module_of_unitary(u, "z").n;
        for (int32_t extra : {1, 3}) {
            Form f = boundary_form(u, "z", n0 + extra);
            need(witt_class(f) == w, "n-margin changes the class, " + where);
        }
    }
    return "100 unitaries, " + std::to_string(nonzero) + " with nonzero class";
}

std::string crit_round_trip_a(Rng& rng) {
    const uint32_t primes[] = {2, 3, 5, 7};
    size_t nonzero = 0;
    for (int i = 0; i < 100; ++i) {
        uint32_t p = primes[i % 4];
        auto c = make_ctx(p, {});
        int s = rng() % 2 ? 1 : -1;
        Form phi = random_quadratic_fp(rng, c, even_dim(rng, p, s, 6), s);
        WittClass w = witt_class_f(phi);
        if (!w.is_zero()) ++nonzero;
        Unitary u = ascend_form(phi, "z");
        need(u.flavor == make_flavor(true, s), "ascend_form flavor is not eta, " + pstr(p));
        need(boundary_class(u, "z") == w, "form -> unitary -> form changes the class, " + pstr(p));
    }
    return "100 forms, " + std::to_string(nonzero) + " with nonzero class";
}

std::string crit_round_trip_b(Rng& rng) {
    const uint32_t primes[] = {2, 3, 5};
    size_t nonzero = 0;
    for (int i = 0; i < 50; ++i) {
        uint32_t p = primes[i % 3];
        auto c0 = make_ctx(p, {});
        auto cy = make_ctx(p, {"y"});
        int s = rng() % 2 ? 1 : -1;
        Unitary seed;
        if (p == 2 && i % 2 == 0)
            seed = Unitary{Flavor::EtaMinus, parse_matrix("y+y^-1, y+1+y^-1; y+1+y^-1, y+y^-1", cy)};
        else
            seed = ascend_form(random_quadratic_fp(rng, c0, even_dim(rng, p, s, 3), s), "y");
        s = seed.sign();
        PolyMatrix g = eval_circuit(random_circuit(rng, cy, seed.q(), s, 3, 1, true));
        Unitary u{seed.flavor, g * seed.m};
        WittClass w = boundary_class(u, "y");
        if (!w.is_zero()) ++nonzero;
        Unitary d = descend_form(ascend_unitary_hermitian(u, "z"), "z");
        need(d.flavor == u.flavor, "round trip changes the flavor, " + pstr(p));
        need(boundary_class(d, "y") == w, "unitary -> form -> unitary changes the y-boundary class, " + pstr(p));
    }
    return "50 unitaries, " + std::to_string(nonzero) + " with nonzero class";
}

std::string crit_anticommute(Rng& rng) {
    const uint32_t primes[] = {3, 5, 7, 13};
    size_t nonzero = 0;
    auto at_one = [](const Form& f) {
        return f.dim() ? witt_class(make_hermitian(substitute_all_one(f.m), f.sign)) : witt_class(f);
    };
    for (int i = 0; i < 50; ++i) {
        uint32_t p = primes[i % 4];
        auto c0 = make_ctx(p, {});
        auto cy = make_ctx(p, {"y"});
        size_t dim = 1 + rng() % 3;
        Form phi0 = random_quadratic_fp(rng, c0, dim, 1);
        PolyMatrix e = random_invertible(rng, cy, dim, 3, 1);
        Form phi = make_quadratic(adjoint(e) * embed(phi0, "y").m * e, 1);
        Form r1 = assoc(boundary_form(ascend_form(phi, "z"), "y"));
        Form r2 = boundary_form(ascend_form(assoc(phi), "z"), "y");
        WittClass a = at_one(r1), b = at_one(r2);
        if (!a.is_zero()) ++nonzero;
        need(a == -b, "routes give " + a.to_string() + " and " + b.to_string() + ", " + pstr(p));
    }
    return "50 forms, " + std::to_string(nonzero) + " with nonzero class";
}

std::string crit_cluster() {
    auto c = make_ctx(2, {"z"});
    Unitary u{Flavor::EtaMinus, cluster(c)};
    need(check_eta(u.m, -1), "cluster QCA fails the eta check");
    WittClass w = boundary_class(u, "z");
    need(w.to_string() == "1 in Z/2", "boundary class is " + w.to_string());
    PauliSpec img = unitary_to_pauli(u.m);
    PauliSpec expect = parse_pauli_text("p=2\ndim=1\nq=1\n"
                                        "X1 -> X1[-1] Z1[-1] Z1[0] X1[1] Z1[1]\n"
                                        "Z1 -> X1[-1] Z1[-1] X1[0] X1[1] Z1[1]\n");
    need(same_pauli(img, expect), "Z image is not Y X Y:\n" + pauli_to_text(img));
    return "eta, class 1 in Z/2, Z -> Y[-1] X[0] Y[1]";
}

bool is_real(const PolyMatrix& u) {
    size_t q = u.rows() / 2;
    PolyMatrix t = const_term(adjoint(u) * eta_matrix(u.ctx(), q) * u);
    for (size_t j = 0; j < t.rows(); ++j)
        if (!t(j, j).is_zero()) return false;
    return true;
}

std::string crit_time_reversal(Rng& rng) {
    size_t was_real = 0;
    for (int i = 0; i < 100; ++i) {
        auto c = i % 2 == 0 ? make_ctx(2, {"z"}) : make_ctx(2, {"x", "y"});
        size_t q = 1 + rng() % 2;
        Circuit k = random_circuit(rng, c, q, -1, 8, 1, false);
        if (rng() % 2)
            k.gates.insert(k.gates.begin() + long(rng() % k.gates.size()),
                           Gate{Gate::Kind::Z, size_t(0), PolyMatrix::identity(c, 1)});
        PolyMatrix v = eval_circuit(k);
        if (is_real(v)) ++was_real;
        RealNormalization r = normalize_real(v);
        need(is_real(r.u), "normalized output violates the reality condition");
        need(eval_circuit(r.left) * r.u * eval_circuit(r.right) == v, "recomposition does not give the input");
    }
    return "100 unitaries, " + std::to_string(100 - was_real) + " not real on input";
}

std::string crit_identities(Rng& rng) {
    auto c2 = make_ctx(2, {});
    PolyMatrix zh = gen_Z(parse_matrix("1", c2), -1) * gen_H(c2, 1, -1);
    need((zh * zh * zh).is_identity(), "(Z(1) H)^3 != I over F_2");

    for (uint32_t p : {2u, 3u, 5u, 7u})
        for (int s : {-1, 1}) {
            auto c = make_ctx(p, {});
            auto m = [&](const std::string& t) { return parse_matrix(t, c); };
            std::string ms = std::to_string(-s), ps = std::to_string(s);
            PolyMatrix a = m("1,0,0," + ms + "; 0,1,1,0; 0,0,1,0; 0,0,0,1");
            PolyMatrix b = m("1,0,0,0; 0,1,0,0; 0,-1,1,0;" + ps + ",0,0,1");
            PolyMatrix d = m("0,1,0,0;" + ms + ",0,0,0; 0,0,0,1; 0,0," + ms + ",0");
            PolyMatrix h = gen_H(c, 1, s);
            need(a * b * a * d == hat_dsum(h, h), "four-matrix product != H + H, " + pstr(p) + ", s=" + ps);
        }

    for (uint32_t p : {2u, 3u, 5u}) {
        auto c = make_ctx(p, {});
        Form bh = ascend_unitary_hermitian(Unitary{Flavor::EtaMinus, gen_H(c, 1, -1)}, "z");
        need(bh.sign == 1 && bh.m == -lambda_matrix(bh.ctx(), 1, 1), "B-up(H-) != -lambda+_1, " + pstr(p));
    }

    size_t n = 0;
    for (uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
        auto c0 = make_ctx(p, {});
        auto cy = make_ctx(p, {"y"});
        for (int i = 0; i < 10; ++i) {
            int s = rng() % 2 ? 1 : -1;
            Form phi = random_quadratic_fp(rng, c0, even_dim(rng, p, s, 6), s);
            need(substitute_one(ascend_form(phi, "z").m, "z").is_identity(), "epsilon(ascend_form) != I, " + pstr(p));
            if (p > 2)
                need(substitute_one(ascend_form(assoc(phi), "z").m, "z").is_identity(),
                     "epsilon(ascend_form of hermitian) != I, " + pstr(p));
            PolyMatrix e = random_invertible(rng, cy, phi.dim(), 2, 1);
            Form py = make_quadratic(adjoint(e) * embed(phi, "y").m * e, s);
            need(substitute_one(ascend_form(py, "z").m, "z").is_identity(), "epsilon(ascend_form) != I over F_p[y]");
            n += 2;
        }
    }
    return "4 identities, " + std::to_string(n) + " ascend_form outputs";
}

std::string crit_representatives(std::ostringstream& timing) {
    const std::pair<uint32_t, const char*> cases[] = {{2, "1"}, {3, "1"}, {5, "(1,0)"}, {5, "(0,1)"}};
    for (const auto& [p, g] : cases) {
        auto t0 = std::chrono::steady_clock::now();
        Representative r = representative(p, 3, g);
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string where = pstr(p) + " class " + g;
        need(r.u.ctx().nvars() == 3, "not a 3-variable matrix, " + where);
        need(check_lambda(r.u.m, -1), "lambda- check fails, " + where);
        need(check_flavor(r.u.m, r.u.flavor), "declared flavor check fails, " + where);
        need(is_unit(determinant(r.u.m)), "determinant is not a unit, " + where);
        need(substitute_all_one(r.u.m).is_identity(), "collapse at 1 is not I, " + where);
        need(sec < 5.0, "construction took " + std::to_string(sec) + " s, " + where);
        ClassDescriptor d = classify(r.u, &r.prov);
        need(d.source == ClassDescriptor::Source::Certified && d.value == r.prov.seed_class,
             "certified class does not match the seed, " + where);
        timing << " " << p << ":" << std::fixed << std::setprecision(2) << sec << "s";
    }
    return "construction times" + timing.str();
}

std::string crit_classification(Rng& rng) {
    const uint32_t primes[] = {2, 3, 5};
    for (int i = 0; i < 100; ++i) {
        uint32_t p = primes[i % 3];
        auto c = make_ctx(p, {"x", "y"});
        size_t q = 1 + rng() % 2;
        Unitary u{Flavor::LambdaMinus, eval_circuit(random_circuit(rng, c, q, -1, 6, 1, false))};
        ClassDescriptor d = classify(u);
        need(d.value.is_zero(), "2-variable circuit classifies to " + d.value.to_string() + ", " + pstr(p));
        if (i % 10 == 0)
            for (int b : {2, 3, 4})
                for (int v : {0, 1}) {
                    Unitary g{u.flavor, coarse_grain(u.m, v, b)};
                    need(classify(g).value.is_zero(), "coarse-grained 2-variable unitary is not 0, b=" + std::to_string(b));
                }
    }
    // one-variable eta unitaries carry nonzero classes; these must survive coarse-graining
    size_t nonzero = 0;
    for (int i = 0; i < 20; ++i) {
        uint32_t p = primes[i % 3];
        int s = p == 2 ? -1 : (rng() % 2 ? 1 : -1);
        Unitary u = random_1var_unitary(rng, p, true, s);
        ClassDescriptor d = classify(u);
        if (!d.value.is_zero()) ++nonzero;
        for (int b : {2, 3, 4}) {
            Unitary g{u.flavor, coarse_grain(u.m, 0, b)};
            need(classify(g).value == d.value, "coarse-graining by " + std::to_string(b) + " changes the class, " + pstr(p));
        }
    }
    size_t gens = 0;
    for (uint32_t p : {2u, 3u, 5u, 7u, 13u, 17u}) {
        for (int s : {-1, 1}) {
            WittClass::Group g = witt_group(p, s, FormKind::Quadratic);
            std::vector<std::string> elems;
            if (g == WittClass::Group::Z2 || g == WittClass::Group::Z4) elems = {"1"};
            if (g == WittClass::Group::Z2xZ2) elems = {"(1,0)", "(0,1)"};
            for (const std::string& e : elems) {
                Form f = seed_form(parse_class_element(p, s, FormKind::Quadratic, e));
                need(!witt_class_f(f).is_zero(), "generator form has class 0");
                need(cg_kill_check(f, 4), "cg_kill_check fails at b=4, " + pstr(p) + " generator " + e);
                ++gens;
            }
        }
    }
    return "100 two-variable unitaries, " + std::to_string(nonzero) + "/20 nonzero 1-variable classes stable, " +
           std::to_string(gens) + " generators killed at b=4";
}

} // namespace

std::vector<CriterionResult> run_acceptance(uint64_t seed, std::ostream* log) {
    std::vector<CriterionResult> out;
    WittSamples ws;
    std::ostringstream rep_timing;
    // Each criterion draws from its own stream so results do not depend on which ones ran before.
    auto stream = [&](int id) { return Rng(seed * 1000003ULL + uint64_t(id)); };
    struct Spec {
        int id;
        std::string name;
        double limit;   // seconds, 0 = none
        std::function<std::string(Rng&)> run;
    };
    std::vector<Spec> specs = {
        {1, "Witt tables", 10.0, [&](Rng& r) { return crit_witt(r, ws); }},
        {2, "exponent law", 0, [&](Rng&) { return crit_exponent(ws); }},
        {3, "1D decomposition", 30.0, crit_decompose},
        {4, "boundary-form invariance", 0, crit_boundary},
        {5, "round trip form -> unitary -> form", 0, crit_round_trip_a},
        {6, "round trip unitary -> form -> unitary", 0, crit_round_trip_b},
        {7, "anticommuting diagram", 0, crit_anticommute},
        {8, "cluster-state QCA", 0, [](Rng&) { return crit_cluster(); }},
        {9, "time reversal", 0, crit_time_reversal},
        {10, "identities", 0, crit_identities},
        {11, "d=3 representatives", 0, [&](Rng&) { return crit_representatives(rep_timing); }},
        {12, "classification sanity", 0, crit_classification},
    };
    for (const Spec& sp : specs) {
        CriterionResult r;
        r.id = sp.id;
        r.name = sp.name;
        Rng rng = stream(sp.id);
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = sp.run(rng);
            r.pass = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.pass && sp.limit > 0 && r.seconds >= sp.limit) {
            r.pass = false;
            r.detail += "; exceeded the " + std::to_string(int(sp.limit)) + " s budget";
        }
        if (log) {
            *log << (r.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.name << "  ("
                 << std::fixed << std::setprecision(2) << r.seconds << " s)  " << r.detail << "\n";
            log->flush();
        }
        out.push_back(r);
    }
    return out;
}

} // namespace qca
