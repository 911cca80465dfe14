#pragma once

namespace casq::tol {

// Two-tier tolerance structure: exact algebraic identities vs iterative numerics.
inline constexpr double alg = 1e-12;      // exact algebraic identities
inline constexpr double spectral = 1e-10; // spectral reconstructions (eigen, log/exp, SVD)
inline constexpr double exact = 1e-14;    // identities that hold to rounding
inline constexpr double herm = 1e-13;     // construction-level matrix identities

}  // namespace casq::tol
