#pragma once

#include <string>

#include "qca/forms.hpp"
#include "qca/unitary.hpp"

namespace qca {

// Same matrix over R[newvar^{+-1}].
Form embed(const Form& f, const std::string& newvar);
Unitary embed(const Unitary& u, const std::string& newvar);

// U = T^{-1} diag(zI, I) T with T from witt_negative. Quadratic input gives an eta-unitary,
// even hermitian input (through its section) a lambda-unitary; the sign is the input's.
Unitary ascend_form(const Form& f, const std::string& newvar);

// Hermitian form of sign -s built from the blocks of U^dag eta U; checked against the
// five-matrix product with exact division by (z - 1).
Form ascend_unitary_hermitian(const Unitary& u, const std::string& newvar);

// Quadratic variant [[xi', -z gamma], [delta, (1 - z) rho]] with xi' a splitting of the (1,1) block.
Form ascend_unitary_quadratic(const Unitary& u, const std::string& newvar);

} // namespace qca
