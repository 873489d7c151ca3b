// qca: command-line front end for the library.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qca/acceptance.hpp"
#include "qca/ascent.hpp"
#include "qca/classify.hpp"
#include "qca/descent.hpp"
#include "qca/io.hpp"

using namespace qca;
using json = nlohmann::ordered_json;

namespace {

struct Opts {
    std::string input, var, newvar, kind, cls;
    int b = 2;
    int p = 0;
    int dim = -1;
    int n = -1;
    bool json = false;
    uint64_t seed = kDefaultSeed;
};

json matrix_json(const PolyMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j), m.ctx()));
        rows.push_back(row);
    }
    return rows;
}

json class_json(const WittClass& w) {
    return json{{"group", group_name(w.group)}, {"value", w.value_string()}, {"text", w.to_string()}};
}

json form_json(const Form& f) {
    return json{{"kind", f.kind == FormKind::Quadratic ? "quadratic" : "hermitian"},
                {"sign", f.sign},
                {"vars", f.ctx().vars},
                {"matrix", matrix_json(f.m)}};
}

json unitary_json(const Unitary& u) {
    return json{{"flavor", flavor_name(u.flavor)}, {"q", u.q()}, {"vars", u.ctx().vars}, {"matrix", matrix_json(u.m)}};
}

// Output collects a text report and a json object; one of them is printed at the end.
struct Output {
    std::ostringstream text;
    json obj = json::object();
};

AnyObject load(const Opts& o) {
    if (o.input.empty()) throw DomainError("--input is required");
    return parse_any_text(read_file(o.input));
}

Form load_form(const Opts& o) {
    AnyObject a = load(o);
    if (auto* f = std::get_if<Form>(&a)) return *f;
    throw DomainError("'" + o.input + "' is not a form file");
}

UnitaryFile load_unitary(const Opts& o, bool validate = true) {
    AnyObject a = load(o);
    UnitaryFile f;
    if (auto* u = std::get_if<UnitaryFile>(&a))
        f = *u;
    else if (auto* s = std::get_if<PauliSpec>(&a))
        f.u = pauli_to_unitary(*s);
    else
        throw DomainError("'" + o.input + "' is not a unitary or Pauli file");
    if (validate) f.u = make_unitary(f.u.m, f.u.flavor);
    return f;
}

std::string pick_var(const Opts& o, const RingCtx& c) {
    if (!o.var.empty()) {
        if (c.var_index(o.var) < 0) throw DomainError("variable '" + o.var + "' is not in the ring");
        return o.var;
    }
    if (c.vars.empty()) throw DomainError("the ring has no variables");
    return c.vars.back();
}

std::string fresh_var(const Opts& o, const RingCtx& c) {
    if (!o.newvar.empty()) return o.newvar;
    for (const char* v : {"z", "y", "x", "w", "v", "u", "t"})
        if (c.var_index(v) < 0) return v;
    throw DomainError("pass --newvar");
}

std::string sign_sup(int s) { return s < 0 ? "⁻" : "⁺"; }

// "representative p=3 d=3 class=1"
std::optional<Representative> provenance_rep(const std::string& prov) {
    if (prov.empty()) return std::nullopt;
    std::istringstream is(prov);
    std::string word;
    is >> word;
    if (word != "representative") throw DomainError("unrecognised provenance '" + prov + "'");
    std::map<std::string, std::string> kv;
    while (is >> word) {
        size_t eq = word.find('=');
        if (eq == std::string::npos) throw DomainError("unrecognised provenance '" + prov + "'");
        kv[word.substr(0, eq)] = word.substr(eq + 1);
    }
    if (!kv.count("p") || !kv.count("d") || !kv.count("class"))
        throw DomainError("provenance needs p=, d= and class=");
    return representative(std::stoull(kv["p"]), std::stoi(kv["d"]), kv["class"]);
}

void cmd_check(const Opts& o, Output& out) {
    AnyObject a = load(o);
    if (auto* f = std::get_if<Form>(&a)) {
        bool ok = is_nonsingular(*f);
        out.text << "form: " << (f->kind == FormKind::Quadratic ? "quadratic" : "hermitian") << ", sign "
                 << (f->sign < 0 ? "-" : "+") << ", dim " << f->dim() << ", nonsingular: " << (ok ? "yes" : "no")
                 << "\n";
        out.obj = json{{"type", "form"}, {"nonsingular", ok}};
        return;
    }
    UnitaryFile uf = load_unitary(o, false);
    int s = flavor_sign(uf.u.flavor);
    bool lam = check_lambda(uf.u.m, s);
    bool eta = lam && check_eta(uf.u.m, s);
    out.text << "λ" << sign_sup(s) << ": " << (lam ? "yes" : "no") << ", η: " << (eta ? "yes" : "no") << "\n";
    if (!check_flavor(uf.u.m, uf.u.flavor)) {
        try {
            make_unitary(uf.u.m, uf.u.flavor);
        } catch (const DomainError& e) {
            out.text << e.what() << "\n";
        }
    }
    out.obj = json{{"type", "unitary"}, {"sign", s}, {"lambda", lam}, {"eta", eta},
                   {"declared_flavor", flavor_name(uf.u.flavor)}, {"declared_ok", check_flavor(uf.u.m, uf.u.flavor)}};
}

void cmd_witt(const Opts& o, Output& out) {
    Form f = load_form(o);
    WittClass w = witt_class(f);
    out.text << "class " << w.to_string() << "\n";
    out.obj = class_json(w);
}

void cmd_boundary(const Opts& o, Output& out) {
    Unitary u = load_unitary(o).u;
    std::string v = pick_var(o, u.ctx());
    std::optional<int32_t> n;
    if (o.n >= 0) n = o.n;
    Form f = boundary_form(u, v, n);
    WittClass w = witt_class(f);
    out.text << form_to_text(f) << "# class " << w.to_string() << "\n";
    out.obj = json{{"var", v}, {"form", form_json(f)}, {"class", class_json(w)}};
}

void cmd_descend(const Opts& o, Output& out) {
    Form f = load_form(o);
    std::string v = pick_var(o, f.ctx());
    Unitary u = descend_form(f, v);
    out.text << unitary_to_text(u);
    out.obj = json{{"var", v}, {"unitary", unitary_json(u)}};
}

void cmd_ascend(const Opts& o, Output& out) {
    std::string kind = o.kind.empty() ? "form" : o.kind;
    if (kind == "form") {
        Form f = load_form(o);
        Unitary u = ascend_form(f, fresh_var(o, f.ctx()));
        out.text << unitary_to_text(u);
        out.obj = json{{"unitary", unitary_json(u)}};
    } else if (kind == "unitary-hermitian" || kind == "unitary-quadratic") {
        Unitary u = load_unitary(o).u;
        std::string nv = fresh_var(o, u.ctx());
        Form f = kind == "unitary-hermitian" ? ascend_unitary_hermitian(u, nv) : ascend_unitary_quadratic(u, nv);
        out.text << form_to_text(f);
        out.obj = json{{"form", form_json(f)}};
    } else {
        throw DomainError("--kind must be form, unitary-hermitian or unitary-quadratic");
    }
}

void cmd_decompose(const Opts& o, Output& out) {
    Unitary u = load_unitary(o).u;
    Circuit c = decompose_1d(u.m);
    if (eval_circuit(c) != u.m) throw InternalError("decomposition does not reproduce the input");
    out.text << circuit_to_string(c) << "\n";
    out.obj = json{{"circuit", circuit_to_string(c)}, {"tokens", c.gates.size()}};
}

void cmd_classify(const Opts& o, Output& out) {
    UnitaryFile uf = load_unitary(o);
    std::optional<Representative> rep = provenance_rep(uf.provenance);
    ClassDescriptor d = classify(uf.u, rep ? &rep->prov : nullptr);
    out.text << "class " << d.value.value_string();
    if (d.witness) out.text << "; witness circuit: " << circuit_to_string(*d.witness);
    out.text << "\n";
    if (d.source == ClassDescriptor::Source::Certified)
        out.text << "CERTIFIED BY CONSTRUCTION (not recomputed): the input equals the recorded ascent chain output\n";
    out.text << d.to_string() << "\n";
    for (const std::string& s : d.details) out.text << "  " << s << "\n";
    out.obj = json{{"d", d.d},
                   {"p", d.p},
                   {"flavor", flavor_name(d.flavor)},
                   {"group", group_name(d.value.group)},
                   {"value", d.value.value_string()},
                   {"source", d.source == ClassDescriptor::Source::Computed ? "computed" : "certified-by-construction"},
                   {"details", d.details}};
    if (d.witness) out.obj["witness"] = circuit_to_string(*d.witness);
}

void cmd_representative(const Opts& o, Output& out) {
    if (o.p <= 0 || o.dim < 0) throw DomainError("representative needs --p and --dim");
    std::string cls = o.cls.empty() ? "1" : o.cls;
    Representative r = representative(uint64_t(o.p), o.dim, cls);
    std::string prov = "representative p=" + std::to_string(o.p) + " d=" + std::to_string(o.dim) + " class=" + cls;
    out.text << unitary_to_text(r.u, prov);
    json steps = r.prov.steps;
    out.obj = json{{"unitary", unitary_json(r.u)}, {"provenance", prov}, {"steps", steps},
                   {"seed_class", r.prov.seed_class.to_string()}};
}

void cmd_normalize(const Opts& o, Output& out) {
    Unitary u = load_unitary(o).u;
    RealNormalization r = normalize_real(u.m);
    Unitary mid{make_flavor(true, flavor_sign(u.flavor)), r.u};
    out.text << "# v = left * u * right\n# left: " << circuit_to_string(r.left) << "\n# right: "
             << circuit_to_string(r.right) << "\n"
             << unitary_to_text(mid);
    out.obj = json{{"left", circuit_to_string(r.left)}, {"right", circuit_to_string(r.right)},
                   {"unitary", unitary_json(mid)}};
}

void cmd_coarse(const Opts& o, Output& out) {
    Unitary u = load_unitary(o).u;
    std::string v = pick_var(o, u.ctx());
    if (o.b < 1) throw DomainError("--b must be positive");
    Unitary c = make_unitary(coarse_grain(u.m, u.ctx().var_index(v), o.b), u.flavor);
    out.text << unitary_to_text(c);
    out.obj = json{{"var", v}, {"b", o.b}, {"unitary", unitary_json(c)}};
}

void cmd_pauli(const Opts& o, Output& out) {
    AnyObject a = load(o);
    if (auto* s = std::get_if<PauliSpec>(&a)) {
        Unitary u = pauli_to_unitary(*s);
        out.text << unitary_to_text(u);
        out.obj = json{{"unitary", unitary_json(u)}};
        return;
    }
    UnitaryFile uf = load_unitary(o);
    if (flavor_sign(uf.u.flavor) != -1) throw DomainError("Pauli images need a sign - unitary");
    PauliSpec s = unitary_to_pauli(uf.u.m);
    out.text << pauli_to_text(s);
    out.obj = json{{"pauli", pauli_to_text(s)}};
}

int cmd_selftest(const Opts& o, Output& out) {
    std::vector<CriterionResult> res = run_acceptance(o.seed, o.json ? nullptr : &out.text);
    json arr = json::array();
    bool all = true;
    for (const auto& r : res) {
        all = all && r.pass;
        arr.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    }
    out.obj = json{{"seed", o.seed}, {"criteria", arr}, {"all_pass", all}};
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qca: Clifford QCA as unitary matrices over Laurent polynomial rings"};
    app.require_subcommand(1);
    Opts o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "input file");
        sub->add_option("--var", o.var, "variable name");
        sub->add_option("--newvar", o.newvar, "name of the ascent variable");
        sub->add_option("--kind", o.kind, "form | unitary-hermitian | unitary-quadratic");
        sub->add_option("--b", o.b, "coarse-graining factor");
        sub->add_option("--p", o.p, "prime");
        sub->add_option("--dim", o.dim, "spatial dimension");
        sub->add_option("--class", o.cls, "class element, e.g. 1 or (1,0)");
        sub->add_option("--n", o.n, "boundary window offset");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_flag("--json", o.json, "structured output");
    };
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"check", "flavor checks of a unitary, nonsingularity of a form"},
        {"witt", "Witt class of a form"},
        {"boundary", "boundary form of a unitary along --var"},
        {"descend", "unitary from a form over one variable"},
        {"ascend", "raise a form or unitary by one variable"},
        {"decompose1d", "elementary circuit of a one-variable lambda- unitary"},
        {"classify", "class of a unitary"},
        {"representative", "representative unitary for --p --dim --class"},
        {"normalize-real", "time-reversal normalization"},
        {"coarse", "coarse-grain along --var by --b"},
        {"pauli", "convert between Pauli images and a unitary"},
        {"selftest", "run the acceptance suite"},
    };
    for (const auto& [name, help] : cmds) add_common(app.add_subcommand(name, help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    Output out;
    int code = 0;
    try {
        if (cmd == "check") cmd_check(o, out);
        else if (cmd == "witt") cmd_witt(o, out);
        else if (cmd == "boundary") cmd_boundary(o, out);
        else if (cmd == "descend") cmd_descend(o, out);
        else if (cmd == "ascend") cmd_ascend(o, out);
        else if (cmd == "decompose1d") cmd_decompose(o, out);
        else if (cmd == "classify") cmd_classify(o, out);
        else if (cmd == "representative") cmd_representative(o, out);
        else if (cmd == "normalize-real") cmd_normalize(o, out);
        else if (cmd == "coarse") cmd_coarse(o, out);
        else if (cmd == "pauli") cmd_pauli(o, out);
        else if (cmd == "selftest") code = cmd_selftest(o, out);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    if (o.json)
        std::cout << out.obj.dump(2) << "\n";
    else
        std::cout << out.text.str();
    return code;
}
