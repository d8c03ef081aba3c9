#pragma once

#include "obqr/oblique.hpp"

namespace obqr::detail {

/// Turns raw factors into an outcome, reporting SingularR when the diagonal
/// of R is not positive or an entry of Q or R is not finite.
FactorizationOutcome finalize(QrFactors factors);

}  // namespace obqr::detail
