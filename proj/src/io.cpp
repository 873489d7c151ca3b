#include "qca/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace qca {

namespace {

struct HeaderValue {
    std::string value;
    int line = 0;
};

struct Parsed {
    std::map<std::string, HeaderValue> header;
    std::string body;    // comments blanked, header lines emptied; line numbers preserved
    int first_body_line = 1;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool is_header_line(const std::string& t) {
    size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    std::string key = trim(t.substr(0, eq));
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return std::islower(uint8_t(c)) != 0; });
}

Parsed split_text(const std::string& text) {
    Parsed out;
    std::istringstream is(text);
    std::string line;
    int n = 0;
    bool in_body = false;
    std::ostringstream body;
    while (std::getline(is, line)) {
        ++n;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (!in_body && t.empty()) {
            body << "\n";
            continue;
        }
        if (!in_body && is_header_line(t)) {
            size_t eq = t.find('=');
            std::string key = trim(t.substr(0, eq));
            if (out.header.count(key)) throw ParseError("duplicate header key '" + key + "'", n, 1);
            out.header[key] = {trim(t.substr(eq + 1)), n};
            body << "\n";
            continue;
        }
        if (!in_body) out.first_body_line = n;
        in_body = true;
        body << line << "\n";
    }
    out.body = body.str();
    return out;
}

const HeaderValue& need(const Parsed& p, const std::string& key) {
    auto it = p.header.find(key);
    if (it == p.header.end()) throw ParseError("missing header '" + key + "='", 1, 1);
    return it->second;
}

void only_keys(const Parsed& p, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : p.header)
        if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
            throw ParseError("unknown header key '" + k + "'", v.line, 1);
}

int64_t parse_int(const HeaderValue& v, const std::string& key) {
    try {
        size_t used = 0;
        int64_t x = std::stoll(v.value, &used);
        if (used != v.value.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ParseError("header '" + key + "' needs an integer, got '" + v.value + "'", v.line, int(key.size()) + 2);
    }
}

RingCtx parse_ring(const Parsed& p) {
    const HeaderValue& pv = need(p, "p");
    int64_t prime = parse_int(pv, "p");
    if (prime < 2) throw ParseError("p must be a prime", pv.line, 3);
    std::vector<std::string> vars;
    auto it = p.header.find("vars");
    if (it != p.header.end()) {
        std::stringstream ss(it->second.value);
        std::string v;
        while (std::getline(ss, v, ',')) {
            v = trim(v);
            if (!v.empty()) vars.push_back(v);
        }
    }
    try {
        return make_ctx(uint64_t(prime), vars);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), pv.line, 1);
    }
}

int parse_sign(const HeaderValue& v) {
    if (v.value == "+" || v.value == "+1" || v.value == "1") return 1;
    if (v.value == "-" || v.value == "-1") return -1;
    throw ParseError("sign must be + or -, got '" + v.value + "'", v.line, 6);
}

PolyMatrix body_matrix(const Parsed& p, const RingCtx& ctx, size_t rows, size_t cols) {
    PolyMatrix m = parse_matrix(p.body, ctx, 1);
    if (m.rows() != rows || m.cols() != cols)
        throw ParseError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", header says " +
                             std::to_string(rows) + "x" + std::to_string(cols),
                         p.first_body_line, 1);
    return m;
}

std::string header_ring(const RingCtx& c) {
    std::ostringstream os;
    os << "p=" << c.p << "\nvars=";
    for (size_t i = 0; i < c.vars.size(); ++i) os << (i ? "," : "") << c.vars[i];
    os << "\n";
    return os.str();
}

} // namespace

Form parse_form_text(const std::string& text) {
    Parsed p = split_text(text);
    only_keys(p, {"p", "vars", "kind", "sign", "dim"});
    RingCtx ctx = parse_ring(p);
    const HeaderValue& kv = need(p, "kind");
    FormKind kind;
    if (kv.value == "quadratic")
        kind = FormKind::Quadratic;
    else if (kv.value == "hermitian")
        kind = FormKind::Hermitian;
    else
        throw ParseError("kind must be quadratic or hermitian for a form, got '" + kv.value + "'", kv.line, 6);
    int sign = parse_sign(need(p, "sign"));
    int64_t dim = parse_int(need(p, "dim"), "dim");
    if (dim < 0) throw ParseError("dim must be non-negative", need(p, "dim").line, 5);
    PolyMatrix m = body_matrix(p, ctx, size_t(dim), size_t(dim));
    if (kind == FormKind::Hermitian) return make_hermitian(m, sign);
    return make_quadratic(m, sign);
}

UnitaryFile parse_unitary_text(const std::string& text) {
    Parsed p = split_text(text);
    only_keys(p, {"p", "vars", "kind", "flavor", "q", "provenance"});
    RingCtx ctx = parse_ring(p);
    const HeaderValue& kv = need(p, "kind");
    if (kv.value != "unitary") throw ParseError("kind must be unitary, got '" + kv.value + "'", kv.line, 6);
    const HeaderValue& fv = need(p, "flavor");
    Flavor fl;
    try {
        fl = parse_flavor(fv.value);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), fv.line, 8);
    }
    int64_t q = parse_int(need(p, "q"), "q");
    if (q < 1) throw ParseError("q must be positive", need(p, "q").line, 3);
    UnitaryFile f;
    f.u = Unitary{fl, body_matrix(p, ctx, size_t(2 * q), size_t(2 * q))};
    auto it = p.header.find("provenance");
    if (it != p.header.end()) f.provenance = it->second.value;
    return f;
}

PauliSpec parse_pauli_text(const std::string& text) {
    Parsed p = split_text(text);
    only_keys(p, {"p", "dim", "q"});
    PauliSpec s;
    const HeaderValue& pv = need(p, "p");
    int64_t prime = parse_int(pv, "p");
    if (prime < 2 || !is_prime(uint64_t(prime))) throw ParseError("p must be a prime", pv.line, 3);
    s.p = uint32_t(prime);
    int64_t d = parse_int(need(p, "dim"), "dim");
    if (d < 0 || d > kMaxVars) throw ParseError("dim out of range", need(p, "dim").line, 5);
    s.d = int(d);
    int64_t q = parse_int(need(p, "q"), "q");
    if (q < 1) throw ParseError("q must be positive", need(p, "q").line, 3);
    s.q = size_t(q);
    s.images.assign(2 * s.q, {});
    std::vector<bool> seen(2 * s.q, false);

    std::istringstream is(p.body);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        if (trim(line).empty()) continue;
        size_t pos = 0;
        auto col = [&]() { return int(pos) + 1; };
        auto skip_ws = [&]() {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        };
        auto read_int = [&](bool allow_sign) -> int64_t {
            size_t start = pos;
            if (allow_sign && pos < line.size() && (line[pos] == '-' || line[pos] == '+')) ++pos;
            size_t digits = pos;
            while (pos < line.size() && std::isdigit(uint8_t(line[pos]))) ++pos;
            if (pos == digits) throw ParseError("expected an integer", n, int(start) + 1);
            return std::stoll(line.substr(start, pos - start));
        };
        skip_ws();
        if (pos >= line.size() || (line[pos] != 'X' && line[pos] != 'Z'))
            throw ParseError("expected X<i> or Z<i>", n, col());
        char type = line[pos++];
        int64_t qubit = read_int(false);
        if (qubit < 1 || qubit > int64_t(s.q)) throw ParseError("qubit index out of range", n, col());
        size_t slot = (type == 'X' ? 0 : s.q) + size_t(qubit - 1);
        if (seen[slot]) throw ParseError("image given twice", n, 1);
        seen[slot] = true;
        skip_ws();
        if (line.compare(pos, 2, "->") != 0) throw ParseError("expected '->'", n, col());
        pos += 2;
        for (;;) {
            skip_ws();
            if (pos >= line.size()) break;
            PauliFactor f;
            if (line[pos] != 'X' && line[pos] != 'Z') throw ParseError("expected a factor X<i>[..] or Z<i>[..]", n, col());
            f.type = line[pos++];
            int64_t fq = read_int(false);
            if (fq < 1 || fq > int64_t(s.q)) throw ParseError("qubit index out of range", n, col());
            f.qubit = int(fq);
            if (pos >= line.size() || line[pos] != '[') throw ParseError("expected '['", n, col());
            ++pos;
            for (;;) {
                skip_ws();
                f.site.push_back(int32_t(read_int(true)));
                skip_ws();
                if (pos < line.size() && line[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < line.size() && line[pos] == ']') {
                    ++pos;
                    break;
                }
                throw ParseError("expected ',' or ']'", n, col());
            }
            if (int(f.site.size()) != s.d)
                throw ParseError("site has " + std::to_string(f.site.size()) + " coordinates, dim is " +
                                     std::to_string(s.d),
                                 n, col());
            if (pos < line.size() && line[pos] == '^') {
                ++pos;
                int64_t pw = read_int(false);
                f.power = uint32_t(pw % int64_t(s.p));
            }
            s.images[slot].push_back(f);
        }
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw ParseError(std::string("missing image of ") + (i < s.q ? "X" : "Z") + std::to_string(i % s.q + 1),
                             p.first_body_line, 1);
    return s;
}

std::string form_to_text(const Form& f) {
    std::ostringstream os;
    os << header_ring(f.ctx());
    os << "kind=" << (f.kind == FormKind::Quadratic ? "quadratic" : "hermitian") << "\n";
    os << "sign=" << (f.sign > 0 ? "+" : "-") << "\n";
    os << "dim=" << f.dim() << "\n";
    if (f.dim()) os << to_string(f.m) << "\n";
    return os.str();
}

std::string unitary_to_text(const Unitary& u, const std::string& provenance) {
    std::ostringstream os;
    os << header_ring(u.ctx());
    os << "kind=unitary\nflavor=" << flavor_name(u.flavor) << "\nq=" << u.q() << "\n";
    if (!provenance.empty()) os << "provenance=" << provenance << "\n";
    os << to_string(u.m) << "\n";
    return os.str();
}

std::string pauli_to_text(const PauliSpec& s) {
    std::ostringstream os;
    os << "p=" << s.p << "\ndim=" << s.d << "\nq=" << s.q << "\n";
    for (size_t j = 0; j < s.images.size(); ++j) {
        os << (j < s.q ? "X" : "Z") << (j % s.q + 1) << " ->";
        for (const PauliFactor& f : s.images[j]) {
            os << " " << f.type << f.qubit << "[";
            for (size_t k = 0; k < f.site.size(); ++k) os << (k ? "," : "") << f.site[k];
            os << "]";
            if (f.power != 1) os << "^" << f.power;
        }
        os << "\n";
    }
    return os.str();
}

AnyObject parse_any_text(const std::string& text) {
    Parsed p = split_text(text);
    auto it = p.header.find("kind");
    if (it == p.header.end()) return parse_pauli_text(text);
    if (it->second.value == "unitary") return parse_unitary_text(text);
    return parse_form_text(text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace qca
