#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qca/forms.hpp"
#include "qca/unitary.hpp"

namespace qca {

// Text files: `key=value` header lines, then a matrix block (or Pauli image lines).
// `#` starts a comment that runs to the end of the line.

struct UnitaryFile {
    Unitary u;
    std::string provenance;   // optional `provenance=` header, e.g. "representative p=3 d=3 class=1"
};

Form parse_form_text(const std::string& text);
UnitaryFile parse_unitary_text(const std::string& text);
PauliSpec parse_pauli_text(const std::string& text);

std::string form_to_text(const Form& f);
std::string unitary_to_text(const Unitary& u, const std::string& provenance = "");
std::string pauli_to_text(const PauliSpec& s);

using AnyObject = std::variant<Form, UnitaryFile, PauliSpec>;
AnyObject parse_any_text(const std::string& text);   // dispatches on `kind=` (absent: Pauli)

std::string read_file(const std::string& path);       // throws DomainError when unreadable

} // namespace qca
