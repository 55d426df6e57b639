// Copyright 2026 The plmforge Authors
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

#ifndef PLMFORGE_ERRORS_H
#define PLMFORGE_ERRORS_H

#include <stdexcept>
#include <string>

namespace plmforge {

/// Bad arguments: wrong lengths, out-of-range wires, invalid dimensions.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The simulator's qubit cap would be exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed circuit text. `line` is 1-based, 0 when unknown.
struct ParseError : std::invalid_argument {
    ParseError(const std::string &msg, int line)
        : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {
    }
    int line;
};

/// The compiler met a gate it cannot lower.
struct CompileError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A one-time object (signature token, obfuscation package) was used twice.
struct OneTimeUseError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Honest protocol execution produced a rejection.
struct ProtocolFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerically impossible situations, e.g. sampling from a zero distribution.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace plmforge

#endif
