#pragma once

#include <stdexcept>

namespace isinglab {

class SingularBeta : public std::domain_error {
public:
    explicit SingularBeta(const std::string& what) : std::domain_error(what) {}
};

/// beta_c = (1/2) ln(1 + sqrt 2) of the square-lattice n.n.f. model.
double critical_beta_2d();

/// beta f(beta, 0) = ln 2 + (1/8pi^2) int int ln(cosh^2 b - sinh b (cos t1 +
/// cos t2)) via midpoint tensor-product quadrature, resolution nodes per
/// axis. Refuses beta within 1e-6 of beta_c (logarithmic singularity).
double onsager_free_energy(double beta, int resolution = 512);

/// Spontaneous magnetization: (1 - sinh(2 beta)^{-4})^{1/8} above beta_c,
/// zero at and below it. Continuous at beta_c.
double onsager_magnetization(double beta);

struct StripSpec {
    int width = 2;      // ring circumference, 1..12
    double beta = 0.0;
};

/// Free energy density ln(lambda_max)/W of the symmetric row-to-row transfer
/// matrix on a width-W ring at h = 0, by power iteration. Circumference-2
/// rings carry the doubled coupling; width-1 rings drop the self-pair, so
/// the value matches torus enumeration under the same edge conventions.
double strip_free_energy(const StripSpec& spec);

}  // namespace isinglab
