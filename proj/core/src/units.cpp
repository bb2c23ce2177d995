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

#include "ristrain/units.hpp"
#include "ristrain/error.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <string>

namespace ristrain::units {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

[[noreturn]] void bad(std::string_view text, const char* why)
{
    throw Error(ErrorCode::invalid_argument,
                "cannot parse quantity '" + std::string(text) + "': " + why);
}

} // namespace

double parse_quantity(std::string_view text, Quantity kind)
{
    const std::string_view s = trim(text);
    if (s.empty())
        bad(text, "empty value");

    if (iequals(s, "inf") || iequals(s, "+inf") || iequals(s, "infinity"))
        return std::numeric_limits<double>::infinity();

    double value = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (*first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc())
        bad(text, "not a number");

    const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
    if (suffix.empty())
        return value;

    switch (kind) {
    case Quantity::ratio:
        if (iequals(suffix, "dB"))
            return db_to_linear(value);
        break;
    case Quantity::power:
        if (iequals(suffix, "dBm"))
            return dbm_to_mw(value);
        if (iequals(suffix, "mW"))
            return value;
        if (iequals(suffix, "W"))
            return value * 1e3;
        break;
    case Quantity::length:
        if (iequals(suffix, "m"))
            return value;
        break;
    }
    bad(text, "unit suffix does not match the expected quantity");
}

} // namespace ristrain::units
