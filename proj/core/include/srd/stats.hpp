#pragma once

#include <cstddef>
#include <span>

namespace srd {

// A Monte Carlo point estimate with its standard error of the mean.
struct EstimateWithError {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;

    static EstimateWithError from_samples(std::span<const double> samples);
};

}  // namespace srd
