#include "isinglab/analytic2d.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace isinglab {

double critical_beta_2d() { return 0.5 * std::log1p(std::numbers::sqrt2); }

double onsager_free_energy(double beta, int resolution) {
    if (beta < 0.0) throw std::domain_error("beta must be >= 0");
    if (resolution < 16) throw std::domain_error("resolution must be >= 16");
    if (std::abs(beta - critical_beta_2d()) < 1e-6)
        throw SingularBeta("integrand is singular at beta_c; widen the gap");
    const double two_pi = 2.0 * std::numbers::pi;
    const double step = two_pi / resolution;
    // argument 2 beta: the width-W transfer matrix converges to this value
    const double ch2 = std::cosh(2.0 * beta) * std::cosh(2.0 * beta);
    const double sh = std::sinh(2.0 * beta);
    std::vector<double> cosv(resolution);
    for (int k = 0; k < resolution; ++k) cosv[k] = std::cos((k + 0.5) * step);
    double sum = 0.0;
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            sum += std::log(ch2 - sh * (cosv[i] + cosv[j]));
    double integral = sum * step * step;
    return std::log(2.0) + integral / (8.0 * std::numbers::pi * std::numbers::pi);
}

double onsager_magnetization(double beta) {
    if (beta <= 0.0) throw std::domain_error("beta must be > 0");
    // The vanishing argument sinh(2 beta)^{-4} = 1 at beta_c pins the
    // convention; see the README notes on the printed variant.
    if (beta <= critical_beta_2d()) return 0.0;
    double s = std::sinh(2.0 * beta);
    return std::pow(1.0 - 1.0 / (s * s * s * s), 0.125);
}

double strip_free_energy(const StripSpec& spec) {
    const int W = spec.width;
    if (W < 1 || W > 12) throw std::domain_error("strip width must be 1..12");
    const double beta = spec.beta;
    const std::size_t dim = std::size_t(1) << W;

    // Row energy sum_i s_i s_{i+1 mod W}; the W = 1 self-pair is dropped and
    // W = 2 keeps the doubled bond, matching the torus generator.
    std::vector<double> half_row(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double e = 0.0;
        if (W > 1)
            for (int i = 0; i < W; ++i) {
                int a = (s >> i) & 1u ? -1 : 1;
                int b = (s >> ((i + 1) % W)) & 1u ? -1 : 1;
                e += a * b;
            }
        half_row[s] = std::exp(0.5 * beta * e);
    }

    const double ep = std::exp(beta), em = std::exp(-beta);
    std::vector<double> v(dim, 1.0 / std::sqrt((double)dim)), tmp(dim);
    auto apply = [&](std::vector<double>& x) {
        for (std::size_t s = 0; s < dim; ++s) x[s] *= half_row[s];
        // vertical bonds as a Kronecker product of 2x2 factors
        for (int i = 0; i < W; ++i) {
            const std::size_t bit = std::size_t(1) << i;
            for (std::size_t s = 0; s < dim; ++s) {
                if (s & bit) continue;
                double a = x[s], b = x[s | bit];
                tmp[s] = ep * a + em * b;
                tmp[s | bit] = em * a + ep * b;
            }
            std::swap(x, tmp);
        }
        for (std::size_t s = 0; s < dim; ++s) x[s] *= half_row[s];
    };

    double lambda = 0.0;
    for (int it = 0; it < 100000; ++it) {
        apply(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        if (std::abs(norm - lambda) <= 1e-13 * std::abs(norm)) {
            return std::log(norm) / W;
        }
        lambda = norm;
    }
    throw std::runtime_error("strip transfer matrix power iteration stalled");
}

}  // namespace isinglab
