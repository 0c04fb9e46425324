// SPDX-License-Identifier: Apache-2.0
//
// irsdm: beamforming simulator for multi-IRS multi-stream links
// Copyright (C) 2026 The irsdm authors
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

#ifndef IRSDM_ERRORS_HPP
#define IRSDM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace irsdm
{

enum class ErrorKind
{
    dimension,    // shape mismatch
    domain,       // argument outside the admissible set
    degenerate,   // projection or effective channel collapses to zero
    conditioning, // singular / non-finite intermediate
    infeasible,   // power budget cannot be met
    config,       // bad configuration input
    io
};

const char *to_string(ErrorKind kind);

/// Single exception type carrying a category; callers branch on kind().
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Same error with "<context>: " prepended to the message.
    Error with_context(const std::string &context) const
    {
        return Error(kind_, context + ": " + what());
    }

private:
    ErrorKind kind_;
};

inline const char *to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

} // namespace irsdm

#endif
