#include "srd/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace srd {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("TimeGrid needs at least two points");
    if (points_.front() != 0.0) throw std::invalid_argument("TimeGrid must start at 0");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]) || points_[i] <= points_[i - 1]) {
            throw std::invalid_argument("TimeGrid points must be finite and strictly increasing");
        }
    }
    const double h0 = points_[1] - points_[0];
    bool uniform = true;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double h = points_[i] - points_[i - 1];
        // step-relative tolerance plus the representation error of the
        // points themselves, which dominates on long horizons
        const double tol = 1e-12 * std::max(h0, h) + 8.0 * 2.3e-16 * points_[i];
        if (std::fabs(h - h0) > tol) {
            uniform = false;
            break;
        }
    }
    if (uniform) uniform_step_ = h0;
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t n_steps) {
    if (!(horizon > 0.0) || n_steps == 0) {
        throw std::invalid_argument("TimeGrid::uniform requires horizon > 0 and n_steps > 0");
    }
    std::vector<double> pts(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        pts[k] = horizon * static_cast<double>(k) / static_cast<double>(n_steps);
    }
    pts.back() = horizon;
    return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::uniform_then_geometric(double t_switch, double h0, double ratio,
                                          double horizon) {
    if (!(h0 > 0.0) || !(ratio > 1.0) || !(t_switch > 0.0) || !(horizon > t_switch)) {
        throw std::invalid_argument("uniform_then_geometric: need h0 > 0, ratio > 1, 0 < t_switch < horizon");
    }
    std::vector<double> pts{0.0};
    double t = 0.0;
    while (t + h0 < t_switch - 1e-12 * t_switch) {
        t += h0;
        pts.push_back(t);
    }
    double h = h0;
    while (t < horizon) {
        h *= ratio;
        t = std::min(t + h, horizon);
        pts.push_back(t);
    }
    pts.back() = horizon;
    return TimeGrid(std::move(pts));
}

std::size_t TimeGrid::index_of(double t) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::fabs(points_[i] - t) <= 1e-12 * std::max(1.0, std::fabs(t))) return i;
    }
    throw std::invalid_argument("time is not a grid point");
}

}  // namespace srd
