// Decompose a random positive definite matrix and verify the factorization
// residuals and the interlacing of its two spectra.

#include <cstdio>

#include <sympeig/sympeig.hpp>

int main() {
    using namespace sympeig;

    Rng rng(7);
    const SymmetricMatrix a = random_pd(8, rng);

    const WilliamsonForm w = williamson(a);
    std::printf("symplectic eigenvalues:");
    for (const double d : w.d) std::printf(" %.12g", d);
    std::printf("\nresidual_factor     = %.3e\n", w.residual_factor);
    std::printf("residual_symplectic = %.3e\n", w.residual_symplectic);

    const InterlacingReport r = interlace_matrix(a);
    std::printf("interlacing all_ok  = %s\n", r.all_ok ? "true" : "false");
    return 0;
}
