#include "srd/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace srd {

EstimateWithError EstimateWithError::from_samples(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("EstimateWithError needs at least 2 samples");
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sample_var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(sample_var / static_cast<double>(n)), n};
}

}  // namespace srd
