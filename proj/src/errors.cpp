// Copyright 2026 The scnrisk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scnrisk/errors.hpp"

namespace scnrisk {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kSolverCap: return "solver-cap";
    case ErrorKind::kSolver: return "solver";
    case ErrorKind::kSimulation: return "simulation";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace scnrisk
