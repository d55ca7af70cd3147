#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace srd {

// Strictly increasing time points starting at 0.  When every step is
// equal the common step is recorded, which several estimators and the
// coupled scheme require.
class TimeGrid {
  public:
    // points must start at 0 and be strictly increasing.
    explicit TimeGrid(std::vector<double> points);

    // 0, T/n, 2T/n, ..., T.
    static TimeGrid uniform(double horizon, std::size_t n_steps);

    // Uniform step h0 on [0, t_switch], then steps growing by `ratio`
    // per step until `horizon` (final point clamped to horizon exactly).
    // Keeps long-horizon ensembles affordable where the laws vary slowly.
    static TimeGrid uniform_then_geometric(double t_switch, double h0, double ratio,
                                           double horizon);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double horizon() const { return points_.back(); }
    std::optional<double> uniform_step() const { return uniform_step_; }

    // Index of a grid point equal to t (within 1e-12 relative); throws
    // if t is not on the grid.
    std::size_t index_of(double t) const;

    bool operator==(const TimeGrid& other) const { return points_ == other.points_; }

  private:
    std::vector<double> points_;
    std::optional<double> uniform_step_;
};

}  // namespace srd
