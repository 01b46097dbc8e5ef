// SPDX-License-Identifier: Apache-2.0
//
// simsec - secure MIMO links with artificial noise and quantized feedback
// Copyright (C) 2026 The simsec authors
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

namespace simsec {

enum class ErrorKind {
    invalid_input,
    invalid_shape,
    degenerate_channel,
    no_nullspace,
    not_positive_definite,
    insufficient_antennas,
    codebook_too_large,
    empty_codebook,
    bracket_failure,
    config,
    io
};

const char *to_string(ErrorKind kind);

// All library failures derive from this type. The CLI maps config/io kinds
// to exit code 1 and numeric kinds to exit code 2.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_numeric() const noexcept
    {
        return kind_ != ErrorKind::config && kind_ != ErrorKind::io;
    }

private:
    ErrorKind kind_;
};

class NotPositiveDefinite : public Error
{
public:
    NotPositiveDefinite(double eigenvalue, const std::string &what)
        : Error(ErrorKind::not_positive_definite, what), eigenvalue_(eigenvalue) {}

    // Smallest eigenvalue of the offending matrix
    double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

} // namespace simsec
