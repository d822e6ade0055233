#include "opmod/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace opmod {

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t r;
    do {
        r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
}

double SplitMix64::gaussian() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex SplitMix64::complex_gaussian() noexcept {
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 g(seed ^ (stream * 0xD1B54A32D192ED03ULL));
    return g.next();
}

Matrix gaussian_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    // Row-major fill so the draw order matches the serialized layout.
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

Matrix random_isometry(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
    if (cols == 0) return Matrix(rows, 0);
    const Matrix g = gaussian_matrix(rng, rows, cols);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < cols; ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(k) *= d / mag;
    }
    return q;
}

AlgebraElement random_element(SplitMix64& rng, const FdCStarAlgebra& algebra) {
    std::vector<Matrix> blocks;
    for (int n : algebra.blocks()) blocks.push_back(gaussian_matrix(rng, n, n));
    return AlgebraElement(algebra, std::move(blocks));
}

AmplifiedElement random_amplified(SplitMix64& rng, const FdCStarAlgebra& algebra, std::size_t rows,
                                  std::size_t cols) {
    std::vector<Matrix> blocks;
    for (int n : algebra.blocks())
        blocks.push_back(gaussian_matrix(rng, static_cast<Eigen::Index>(rows) * n, static_cast<Eigen::Index>(cols) * n));
    return AmplifiedElement(algebra, rows, cols, std::move(blocks));
}

}  // namespace opmod
