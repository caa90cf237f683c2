#include "sysid/spectral_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sysid/errors.hpp"
#include "sysid/numerics.hpp"

namespace sysid {

double spectrum_variation(const Spectrum& a, const Spectrum& b) {
    if (a.empty() || a.size() != b.size()) {
        throw SizeMismatch("spectrum_variation: spectra must have equal size >= 1");
    }
    double worst = 0.0;
    for (const Complex& mu : b) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Complex& lambda : a) {
            nearest = std::min(nearest, std::abs(lambda - mu));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

double hausdorff(const Spectrum& a, const Spectrum& b) {
    return std::max(spectrum_variation(a, b), spectrum_variation(b, a));
}

double elsner_bound(const Matrix& A, const Matrix& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
        throw SizeMismatch("elsner_bound: A and B must be square of equal size");
    }
    const double n = static_cast<double>(A.rows());
    const double sum = spectral_norm(A) + spectral_norm(B);
    const double diff = spectral_norm(A - B);
    return std::pow(sum, 1.0 - 1.0 / n) * std::pow(diff, 1.0 / n);
}

}  // namespace sysid
