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

#include <cmath>
#include <string_view>

namespace ristrain::units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

enum class Quantity {
    ratio,    // "5dB" or plain linear number
    power,    // "-70dBm" or plain milliwatts / "3mW"
    length,   // "50m" or plain meters
};

/// Parses a configuration value with an optional unit suffix and returns it in
/// internal units: linear ratio, milliwatts or meters. "inf" parses to +inf.
/// Throws Error(invalid_argument) on malformed input or a suffix that does not
/// fit the quantity.
double parse_quantity(std::string_view text, Quantity kind);

} // namespace ristrain::units
