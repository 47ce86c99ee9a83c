// Copyright 2026 The HQMM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqmm/discrimination.h"

#include <algorithm>
#include <string>

namespace hqmm {

ChannelPair::ChannelPair(KrausMap first, KrausMap second) : first_(std::move(first)), second_(std::move(second)) {
    if (first_.dim_in() != second_.dim_in() || first_.dim_out() != second_.dim_out()) {
        throw DimensionError(
            "channel pair dimensions differ: " + std::to_string(first_.dim_in()) + "->" +
            std::to_string(first_.dim_out()) + " vs " + std::to_string(second_.dim_in()) + "->" +
            std::to_string(second_.dim_out()));
    }
}

double choi_difference_trace_norm(const ChannelPair &pair, double tol) {
    return trace_norm_hermitian(choi(pair.first()) - choi(pair.second()), tol);
}

DiamondBracket diamond_bounds(const ChannelPair &pair, double tol) {
    double norm = choi_difference_trace_norm(pair, tol);
    size_t d_in = pair.first().dim_in();
    return {norm / static_cast<double>(d_in), norm, norm, d_in};
}

SuccessBracket success_probability_bracket(const ChannelPair &pair, double tol) {
    DiamondBracket bracket = diamond_bounds(pair, tol);
    auto clamp = [](double p) { return std::clamp(p, 0.5, 1.0); };
    // A map is trace preserving iff its Heisenberg counterpart is unital.
    bool channels = check_unital(pair.first(), tol) && check_unital(pair.second(), tol);
    return {clamp(0.5 + bracket.lower / 4), clamp(0.5 + bracket.upper / 4), !channels};
}

}  // namespace hqmm
