// SPDX-License-Identifier: Apache-2.0
//
// ristrainlab: simulation library for RIS-assisted multiuser downlink training
// Copyright (C) 2026 The ristrainlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ristrain/error.hpp"

namespace ristrain {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::numeric_failure: return "numeric-failure";
    case ErrorCode::invalid_geometry: return "invalid-geometry";
    case ErrorCode::invalid_rc: return "invalid-rc";
    case ErrorCode::singular_training: return "singular-training";
    case ErrorCode::invalid_pilot: return "invalid-pilot";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::unknown_method: return "unknown-method";
    case ErrorCode::infeasible_targets: return "infeasible-targets";
    case ErrorCode::infeasible_trial: return "infeasible-trial";
    case ErrorCode::unknown_preset: return "unknown-preset";
    case ErrorCode::io_error: return "io-error";
    }
    return "unknown";
}

} // namespace ristrain
