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

#ifndef HQMM_DISCRIMINATION_H
#define HQMM_DISCRIMINATION_H

#include "hqmm/quantum_core.h"

namespace hqmm {

/// Two CP maps with the same input and output dimensions.
class ChannelPair {
   public:
    ChannelPair(KrausMap first, KrausMap second);

    const KrausMap &first() const { return first_; }
    const KrausMap &second() const { return second_; }

   private:
    KrausMap first_;
    KrausMap second_;
};

/// Bounds on the diamond distance from the Choi-difference trace norm:
/// ||J1 - J2||_1 / d_in <= ||Phi1 - Phi2||_diamond <= ||J1 - J2||_1.
struct DiamondBracket {
    double lower;
    double upper;
    double choi_trace_norm;
    size_t d_in;
};

/// One-shot discrimination success probability bracket 1/2 + bracket/4, clamped to [1/2, 1].
struct SuccessBracket {
    double lower;
    double upper;
    /// Set when either map is not trace preserving; the one-shot interpretation assumes channels.
    bool not_channels;
};

/// ||J(first) - J(second)||_1.
double choi_difference_trace_norm(const ChannelPair &pair, double tol = kDefaultTol);

DiamondBracket diamond_bounds(const ChannelPair &pair, double tol = kDefaultTol);

SuccessBracket success_probability_bracket(const ChannelPair &pair, double tol = kDefaultTol);

}  // namespace hqmm

#endif
