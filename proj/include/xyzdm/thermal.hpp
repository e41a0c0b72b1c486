#pragma once

#include "xyzdm/model.hpp"

namespace xyzdm {

// X matrix in the computational basis,
//
//   [ mu_plus   .    .    nu       ]
//   [ .        w1    z    .        ]
//   [ .        z*   w2    .        ]
//   [ nu        .    .    mu_minus ]
//
// with real corner coherence nu. Both the thermal state and the teleported
// output live in this family. For thermal states log_partition holds
// log tr exp(-beta H) and stays finite for every T > 0; partition() itself
// may overflow for extreme beta, the populations never do.
struct XState {
  double w1 = 0.0;        // <01|rho|01>
  double w2 = 0.0;        // <10|rho|10>
  double mu_plus = 0.0;   // <00|rho|00>
  double mu_minus = 0.0;  // <11|rho|11>
  complexd z{0.0, 0.0};   // <01|rho|10>
  double nu = 0.0;        // <00|rho|11>
  double log_partition = 0.0;

  double partition() const;
  double trace() const;
};

// Gibbs state exp(-H/T)/Z evaluated in log-sum-exp form, exact from deep
// quench (T ~ 1e-6) through the near-classical regime (T ~ 1e6).
// Throws std::invalid_argument if T <= 0.
XState gibbs_closed_form(const ModelParams& p);

// Oracle route for the same state: dense eigendecomposition of H with
// max-shifted exponentials. Deliberately shares no code with the closed form.
Matrix4c gibbs_numeric(const ModelParams& p);

Matrix4c xstate_to_matrix(const XState& s);

// Inverse embedding. Requires Hermitian input whose off-X entries vanish and
// whose corner is real within tol; throws std::invalid_argument otherwise.
// log_partition is not recoverable from the matrix and is set to zero.
XState matrix_to_xstate(const Matrix4c& m, double tol = 1e-10);

}  // namespace xyzdm
