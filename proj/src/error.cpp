// Copyright 2026 The gapforge Authors
//
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

#include "gapforge/error.hpp"

namespace gapforge {

std::string_view ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidTour: return "invalid-tour";
    case ErrorKind::kNoMetric: return "no-metric";
    case ErrorKind::kRefuseExhaustive: return "refuse-exhaustive";
    case ErrorKind::kBuildError: return "build-error";
    case ErrorKind::kMustBeConsistent: return "must-be-consistent";
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kInvalidInput: return "invalid-input";
  }
  return "unknown";
}

}  // namespace gapforge
