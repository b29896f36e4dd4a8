// Copyright 2026 The lssbg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lssbg {

    /// Base class of every error thrown by the library.
    class Error : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// File missing, unreadable or unwritable.
    class IoError : public Error {
    public:
        using Error::Error;
    };

    /// File content that cannot be decoded (bad image, bad model header, bad label byte, ...).
    class FormatError : public Error {
    public:
        using Error::Error;
    };

    /// Caller-side contract violation: mismatched dimensions, out-of-range parameters.
    class ArgumentError : public Error {
    public:
        using Error::Error;
    };

    /// Operation invoked on an object that is not ready for it (e.g. finalizing an empty training state).
    class StateError : public Error {
    public:
        using Error::Error;
    };

} // namespace lssbg
