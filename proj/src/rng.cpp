#include "rieszdec/rng.hpp"

#include <cmath>
#include <numbers>

namespace rieszdec {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t Rng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; shift u1 away from zero so the log is finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::next_cgauss() {
    const double re = next_gauss();
    const double im = next_gauss();
    return Complex(re, im) * std::numbers::sqrt2 / 2.0;
}

Rng Rng::split(std::uint64_t stream) const {
    return Rng(mix64(state_ ^ mix64(stream + 0x632BE59BD9B4E019ULL)));
}

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (auto& e : m.entries()) e = rng.next_cgauss();
    return m;
}

} // namespace rieszdec
