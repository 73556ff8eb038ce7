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

#ifndef GAPFORGE_ERROR_HPP_
#define GAPFORGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapforge {

enum class ErrorKind {
  kInvalidTour,
  kNoMetric,
  kRefuseExhaustive,
  kBuildError,
  kMustBeConsistent,
  kInvalidParameter,
  kInvalidInput,
};

std::string_view ToString(ErrorKind kind);

// All library failures are reported through this exception. The kind is
// stable and is what the CLI maps to exit codes.
class ForgeError : public std::runtime_error {
 public:
  ForgeError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ToString(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gapforge

#endif  // GAPFORGE_ERROR_HPP_
