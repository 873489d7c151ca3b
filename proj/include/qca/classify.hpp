#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qca/forms.hpp"
#include "qca/unitary.hpp"

namespace qca {

// Group of translation-invariant Clifford QCA in d dimensions over F_p (lambda- unitaries modulo elementary).
WittClass::Group table_group(int d, uint64_t p);

// How a representative was built: a seed form over F_p lifted through the variables in order,
// alternating ascend_form and ascend_unitary_quadratic.
struct Provenance {
    uint32_t p = 2;
    int d = 0;
    std::vector<std::string> vars;
    Form seed;
    WittClass seed_class;
    std::vector<std::string> steps;
    bool hard_coded = false;   // the d = 1, p = 2 cluster matrix
};

struct ClassDescriptor {
    enum class Source { Computed, Certified };
    int d = 0;
    uint32_t p = 2;
    Flavor flavor = Flavor::LambdaMinus;   // group in which the value lives
    WittClass value;
    Source source = Source::Computed;
    std::optional<Circuit> witness;        // d = 1, lambda-: product of generators equal to U
    std::vector<std::string> details;      // intermediate data of the descent chain

    std::string to_string() const;
};

// Variables are taken in context order; d = number of variables.
ClassDescriptor classify(const Unitary& u, const Provenance* prov = nullptr);

struct Representative {
    Unitary u;
    Provenance prov;
};
// element: "0", "1", "3", "(1,0)", ...
Representative representative(uint64_t p, int d, const std::string& element);
WittClass parse_class_element(uint32_t p, int sign, FormKind kind, const std::string& element);
// Seed over F_p whose Witt class is `w` (quadratic, sign w.sign).
Form seed_form(const WittClass& w);

// Finite description of a map W that equals U on z-degrees >= n and I on z-degrees < -n.
// `window` acts on sites [-l, l] (columns) with images on sites [-r, r] (rows), blocks of 2q.
struct BlendCertificate {
    std::string var;
    int32_t n = 0, l = 0, r = 0;
    size_t q = 0;
    int sign = -1;
    PolyMatrix u;        // the blended unitary over Base[z]
    PolyMatrix window;   // over Base
    PolyMatrix window_inv;
};
// The circuit's gates must be z-free or of Z type; shifts X(alpha(z)) are refused.
BlendCertificate blend_certificate(const Circuit& c, const std::string& var);
bool verify_blend(const BlendCertificate& b);

// Witt class of the b-fold direct sum vanishes.
bool cg_kill_check(const Form& phi, int b = 4);

} // namespace qca
