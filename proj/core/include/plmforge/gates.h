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

#ifndef PLMFORGE_GATES_H
#define PLMFORGE_GATES_H

#include <optional>
#include <string_view>

namespace plmforge {

/// Gate alphabet. U and Udag are opaque oracle calls used only by circuit rewriting.
enum class Gate { X, Z, H, S, CNOT, SWAP, T, U, Udag };

std::string_view gate_name(Gate g);
std::optional<Gate> gate_from_name(std::string_view name);
/// Number of wires; 0 for the variable-arity oracle gates.
int gate_arity(Gate g);

}  // namespace plmforge

#endif
