#include "doctest.h"

#include <filesystem>

#include "qca/io.hpp"
#include "qca/random.hpp"

using namespace qca;

TEST_CASE("form files") {
    Form f = parse_form_text("# arf\np=2\nvars=\nkind=quadratic\nsign=-\ndim=2\n1, 1   # q(e1)=1\n0, 1\n");
    CHECK(f.kind == FormKind::Quadratic);
    CHECK(f.sign == -1);
    CHECK(f.m == parse_matrix("1,1;0,1", f.ctx()));
    CHECK(parse_form_text(form_to_text(f)).m == f.m);

    Form h = parse_form_text("p=5\nvars=x,y\nkind=hermitian\nsign=+\ndim=1\nx+x^-1\n");
    CHECK(h.ctx().vars.size() == 2);
    CHECK_THROWS_AS(parse_form_text("p=5\nvars=x\nkind=hermitian\nsign=+\ndim=1\nx\n"), DomainError);

    Form empty = parse_form_text("p=3\nkind=quadratic\nsign=+\ndim=0\n");
    CHECK(empty.dim() == 0);
    CHECK(parse_form_text(form_to_text(empty)).dim() == 0);
}

TEST_CASE("parse errors carry positions") {
    auto line_of = [](const std::string& t) {
        try {
            parse_any_text(t);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("p=3\nkind=quadratic\nsign=+\ndim=1\ncolor=red\n1\n") == 5);
    CHECK(line_of("p=3\np=3\nkind=quadratic\nsign=+\ndim=1\n1\n") == 2);
    CHECK(line_of("p=3\nvars=z\nkind=quadratic\nsign=+\ndim=2\n1, 0\n\n0, 2*w\n") == 8);
    CHECK(line_of("p=3\nkind=quadratic\nsign=+\ndim=2\n1\n") == 5);
    CHECK(line_of("p=3\nkind=unitary\nflavor=mu\nq=1\n1,0\n0,1\n") == 3);
    CHECK(line_of("p=3\ndim=1\nq=1\nX1 -> Z1[0]\nZ1 -> X1[0,1]\n") == 5);
    CHECK(line_of("p=3\ndim=1\nq=1\nX1 -> Z1[0]\n") == 4);
    CHECK_THROWS_AS(parse_form_text("kind=quadratic\nsign=+\ndim=1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_form_text("p=4\nkind=quadratic\nsign=+\ndim=1\n1\n"), ParseError);
}

TEST_CASE("unitary files") {
    std::string t = "p=2\nvars=z\nkind=unitary\nflavor=eta-\nq=1\nprovenance=cluster\n"
                    "z + z^-1, z + 1 + z^-1\nz + 1 + z^-1, z + z^-1\n";
    UnitaryFile f = parse_unitary_text(t);
    CHECK(f.u.flavor == Flavor::EtaMinus);
    CHECK(f.provenance == "cluster");
    CHECK(f.u.q() == 1);
    UnitaryFile g = parse_unitary_text(unitary_to_text(f.u, f.provenance));
    CHECK(g.u.m == f.u.m);
    CHECK(g.provenance == f.provenance);
    CHECK(std::holds_alternative<UnitaryFile>(parse_any_text(t)));
}

TEST_CASE("pauli files") {
    std::string t = "p=2\ndim=1\nq=1\nX1 -> Z1[-1] X1[0] Z1[1]\nZ1 -> Z1[0]\n";
    PauliSpec s = parse_pauli_text(t);
    CHECK(s.images[0].size() == 3);
    CHECK(s.images[0][0].site == std::vector<int32_t>{-1});
    CHECK(pauli_to_text(s) == t);
    Unitary u = pauli_to_unitary(s);
    CHECK(same_pauli(unitary_to_pauli(u.m), s));

    PauliSpec w = parse_pauli_text("p=5\ndim=2\nq=1\nX1 -> X1[0,0]^2\nZ1 -> Z1[0,0]^3\n");
    CHECK(w.images[0][0].power == 2);
    CHECK(std::holds_alternative<PauliSpec>(parse_any_text(pauli_to_text(w))));
}

TEST_CASE("random round trips through text") {
    Rng rng(31);
    for (uint32_t p : {2u, 3u, 7u}) {
        auto c = make_ctx(p, {"x", "y"});
        for (int s : {-1, 1}) {
            Unitary u{make_flavor(false, s), eval_circuit(random_circuit(rng, c, 2, s, 6, 1, true))};
            CHECK(parse_unitary_text(unitary_to_text(u)).u.m == u.m);
            if (s < 0) {
                PauliSpec ps = unitary_to_pauli(u.m);
                CHECK(same_pauli(parse_pauli_text(pauli_to_text(ps)), ps));
            }
        }
    }
}

TEST_CASE("shipped corpus parses and prints back") {
    namespace fs = std::filesystem;
    fs::path dir = QCA_DATA_DIR;
    int count = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string text = read_file(e.path().string());
        AnyObject obj = parse_any_text(text);
        std::string printed = std::visit(
            [](const auto& o) -> std::string {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, Form>)
                    return form_to_text(o);
                else if constexpr (std::is_same_v<T, UnitaryFile>)
                    return unitary_to_text(o.u, o.provenance);
                else
                    return pauli_to_text(o);
            },
            obj);
        CHECK_MESSAGE(printed == text, e.path().string());
        ++count;
    }
    CHECK(count >= 5);
}
