#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgv {

struct VariogramPoint {
    double lag = 0.0;
    std::optional<double> estimate; // absent when the lag carries no data
    std::int64_t n_pairs = 0;
};

// One estimated variogram track: a GRF ("grf_1"), an indicator pair
// ("ind_2_3"), or a plain continuous series ("values").
struct EmpiricalVariogram {
    std::string track;
    std::vector<VariogramPoint> points;
};

} // namespace pgv
