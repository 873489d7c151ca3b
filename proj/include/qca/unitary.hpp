#pragma once

#include <string>
#include <vector>

#include "qca/forms.hpp"

namespace qca {

enum class Flavor { LambdaMinus, LambdaPlus, EtaMinus, EtaPlus };

int flavor_sign(Flavor f);
bool flavor_is_eta(Flavor f);
Flavor make_flavor(bool eta, int sign);
std::string flavor_name(Flavor f);     // "lambda-", "eta+", ...
Flavor parse_flavor(const std::string& s);

// Rows/columns 0..q-1 are the X-part, q..2q-1 the Z-part.
struct Unitary {
    Flavor flavor = Flavor::LambdaMinus;
    PolyMatrix m;

    size_t q() const { return m.rows() / 2; }
    int sign() const { return flavor_sign(flavor); }
    const RingCtx& ctx() const { return m.ctx(); }
};

bool check_lambda(const PolyMatrix& u, int s);
bool check_eta(const PolyMatrix& u, int s);
bool check_flavor(const PolyMatrix& u, Flavor f);
Unitary make_unitary(const PolyMatrix& m, Flavor f); // throws DomainError naming the violated identity

// Closed-form inverse of a lambda-unitary: [[d^dag, s b^dag], [s c^dag, a^dag]].
PolyMatrix unitary_inverse(const PolyMatrix& u, int s);

PolyMatrix gen_H(const RingCtx& ctx, size_t q, int s);
PolyMatrix gen_H_slot(const RingCtx& ctx, size_t q, int s, size_t slot);
PolyMatrix gen_X(const PolyMatrix& alpha);
PolyMatrix gen_Z(const PolyMatrix& theta, int s);     // requires theta^dag = -s theta
PolyMatrix gen_Zdag(const PolyMatrix& theta, int s);  // Z(theta)^dag
PolyMatrix gen_Ztilde(const PolyMatrix& mu, int s);   // Z(mu - s mu^dag)
PolyMatrix trc_partner(const PolyMatrix& u);

struct Gate {
    enum class Kind { H, Hinv, X, Z, Zdag, Ztilde, ZtildeDag, Fixed };
    Kind kind = Kind::Fixed;
    size_t slot = 0;   // H / Hinv act on one slot
    PolyMatrix mat;    // alpha, theta, mu or the full matrix; may be smaller than the circuit and is then padded
};

// Ordered product: eval = g_0 * g_1 * ... ; gates on fewer slots are padded by the unitary direct sum with I.
struct Circuit {
    RingCtx ctx;
    int sign = -1;
    size_t q = 1;
    std::vector<Gate> gates;
};

PolyMatrix eval_gate(const Gate& g, const RingCtx& ctx, size_t q, int s);
PolyMatrix eval_circuit(const Circuit& c);
Circuit inverse_circuit(const Circuit& c);
std::string gate_to_string(const Gate& g, const RingCtx& ctx, size_t q);
std::string circuit_to_string(const Circuit& c);
// Names a matrix as a single generator token when it has that shape, else a Fixed token.
Gate recognize_gate(const PolyMatrix& m, int s);

// ---- Pauli bridge ----

struct PauliFactor {
    char type = 'X';               // 'X' or 'Z'
    int qubit = 1;                 // 1-based
    std::vector<int32_t> site;     // length d
    uint32_t power = 1;
};

struct PauliSpec {
    uint32_t p = 2;
    int d = 1;
    size_t q = 1;
    std::vector<std::vector<PauliFactor>> images; // X_1..X_q then Z_1..Z_q
};

std::vector<std::string> default_var_names(int d);
Unitary pauli_to_unitary(const PauliSpec& spec);
PauliSpec unitary_to_pauli(const PolyMatrix& u);
bool same_pauli(const PauliSpec& a, const PauliSpec& b); // modulo factor ordering

// ---- time reversal over F_2 ----

struct RealNormalization {
    PolyMatrix u;     // eta-unitary
    Circuit left;     // v = eval(left) * u * eval(right)
    Circuit right;
};
RealNormalization normalize_real(const PolyMatrix& v);

// ---- one-variable lambda- decomposition ----

Circuit decompose_1d(const PolyMatrix& u);

} // namespace qca
