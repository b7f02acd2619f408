#pragma once

// Entropies and asymmetry measures. All entropic quantities are returned in
// bits by default (settings().entropy_in_bits switches to nats). The relative
// entropy of asymmetry is computed through its closed form
// S(twirl(rho)) - S(rho); the relative-entropy form is available as a
// cross-check.

#include <functional>
#include <string>
#include <vector>

#include "asym/quantum.hpp"
#include "asym/symmetry.hpp"

namespace asym {

struct MeasureValue {
    std::string measure_id;
    double value = 0.0;  // >= 0, +inf only from a support violation
};

// Conversion factor from nats to the configured entropy unit.
double entropy_unit_scale();

// -sum lambda_i log lambda_i over eigenvalues above the zero threshold.
double von_neumann_entropy(const DensityMatrix& rho);

// Tr rho (log rho - log sigma), computed in the eigenbasis of sigma restricted
// to its support. Returns +inf when rho leaks outside the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// Closed form S(twirl(rho)) - S(rho).
double rel_entropy_asymmetry(const SymmetryRep& rep, const DensityMatrix& rho);

struct AsymmetryCrossCheck {
    double entropy_difference = 0.0;  // S(twirl(rho)) - S(rho)
    double relative_entropy_form = 0.0;  // S(rho || twirl(rho))
    double discrepancy = 0.0;
};

// Evaluates both closed forms; they must agree within 1e-9 on valid inputs.
AsymmetryCrossCheck rel_entropy_asymmetry_checked(const SymmetryRep& rep,
                                                  const DensityMatrix& rho);

// Wigner-Yanase skew information -(1/2) Tr([sqrt(rho), N]^2). Not entropic;
// always in natural units.
double skew_information(const DensityMatrix& rho, const Matrix& generator);

struct Measure {
    std::string id;
    std::function<double(const SymmetryRep&, const DensityMatrix&)> evaluate;
};

// Always contains relative_entropy_of_asymmetry; skew_information is added
// only for one-parameter representations (it needs a generator).
std::vector<Measure> measure_registry(const SymmetryRep& rep);

}  // namespace asym
