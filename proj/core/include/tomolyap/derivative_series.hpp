#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tomolyap {

/// Time series of the first moments (G2, G3) = (dG/dmu, dG/dnu) at mu = nu = 0,
/// t = 0 .. size() - 1 in kick periods. `probe` optionally carries G(1, 1, tau, t).
struct DerivativeSeries {
    std::vector<std::complex<double>> g2;
    std::vector<std::complex<double>> g3;
    std::vector<std::complex<double>> probe;

    std::size_t size() const { return g2.size(); }
    /// Euclidean norm of the complex pair at step t.
    double norm(std::size_t t) const;
    std::vector<double> norms() const;
};

}  // namespace tomolyap
