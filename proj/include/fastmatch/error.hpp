// Copyright 2026 The fastmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fastmatch {

// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The template is too short for the default (k, k+1) moduli to cover n.
class TemplateTooSmall : public InvalidArgument {
 public:
  TemplateTooSmall(std::size_t n, std::size_t k, std::size_t minimal_k)
      : InvalidArgument("template length " + std::to_string(k) +
                        " too small for signal length " + std::to_string(n) +
                        "; need k >= " + std::to_string(minimal_k)),
        minimal_k_(minimal_k) {}

  std::size_t minimal_k() const noexcept { return minimal_k_; }

 private:
  std::size_t minimal_k_;
};

// A floating-point result failed a sanity check (e.g. imaginary residue
// after an inverse transform of a real correlation).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw InvalidArgument(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace fastmatch
