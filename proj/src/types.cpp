#include "asym/types.hpp"

#include <algorithm>

namespace asym {

NumericSettings& settings() {
    static NumericSettings s;
    return s;
}

double zero_threshold(double lambda_max) {
    return settings().zero_scale * std::max(1.0, lambda_max);
}

}  // namespace asym
