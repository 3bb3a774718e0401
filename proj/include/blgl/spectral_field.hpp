#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "blgl/errors.hpp"
#include "blgl/grid.hpp"

namespace blgl {

using cd = std::complex<double>;

/// Fourier-in-x representation of a scalar field on the strip:
/// coeffs c[xi][j] ~ f_xi(y_j), xi in {-K..K}, row-major in xi.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(std::shared_ptr<const Grid> grid)
        : grid_(std::move(grid)),
          coeffs_(static_cast<size_t>(grid_->n_modes()) * grid_->J, cd{0.0, 0.0}) {}

    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }

    cd& at(int xi, int j) { return coeffs_[idx(xi, j)]; }
    const cd& at(int xi, int j) const { return coeffs_[idx(xi, j)]; }

    cd* mode(int xi) { return coeffs_.data() + idx(xi, 0); }
    const cd* mode(int xi) const { return coeffs_.data() + idx(xi, 0); }

    std::vector<cd>& raw() { return coeffs_; }
    const std::vector<cd>& raw() const { return coeffs_; }

    bool finite() const {
        for (const cd& c : coeffs_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

    double sup_abs() const {
        double m = 0.0;
        for (const cd& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// c[-xi][j] := conj(c[xi][j]) copied from the xi >= 0 half.
    void enforce_hermitian() {
        for (int xi = 1; xi <= grid_->K; ++xi)
            for (int j = 0; j < grid_->J; ++j) at(-xi, j) = std::conj(at(xi, j));
        for (int j = 0; j < grid_->J; ++j) at(0, j) = cd{at(0, j).real(), 0.0};
    }

    double hermitian_defect() const {
        double d = 0.0;
        for (int xi = 0; xi <= grid_->K; ++xi)
            for (int j = 0; j < grid_->J; ++j)
                d = std::max(d, std::abs(at(-xi, j) - std::conj(at(xi, j))));
        return d;
    }

    SpectralField& operator+=(const SpectralField& o) {
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    SpectralField& operator*=(cd c) {
        for (auto& v : coeffs_) v *= c;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(cd c, SpectralField a) { return a *= c; }

private:
    size_t idx(int xi, int j) const {
        return static_cast<size_t>(grid_->mode_index(xi)) * grid_->J + j;
    }
    std::shared_ptr<const Grid> grid_;
    std::vector<cd> coeffs_;
};

struct VelocityPair {
    SpectralField u1;  ///< tangential
    SpectralField u2;  ///< wall-normal
};

inline double sup_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
    return m;
}

}  // namespace blgl
