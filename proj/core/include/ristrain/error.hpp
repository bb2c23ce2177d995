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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ristrain {

enum class ErrorCode {
    invalid_dimension,
    invalid_argument,
    numeric_failure,
    invalid_geometry,
    invalid_rc,
    singular_training,
    invalid_pilot,
    unsupported,
    unknown_method,
    infeasible_targets,
    infeasible_trial,
    unknown_preset,
    io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the sweep runner, the CLI) can branch on the kind of failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ristrain
