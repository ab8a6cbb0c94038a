// Copyright 2026 The gateverify Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gateverify {

/// Failure categories. The numeric values are mirrored by the C API status
/// codes in gateverify.h and must stay in sync with them.
enum class ErrorCode : int {
    kInvalidArgument = 1,
    kDimension = 2,
    kUnsupported = 3,
    kNotHermitian = 4,
    kInvariant = 5,
    kNotStabilizer = 6,
    kNotProduct = 7,
    kSchema = 8,
    kIo = 9,
    kNumeric = 10,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

inline void require(bool condition, ErrorCode code, const std::string &message) {
    if (!condition) {
        fail(code, message);
    }
}

/// Largest Hilbert-space dimension d accepted for operators on H (operators on
/// H⊗H are then at most d² × d²). Defaults to 64.
std::size_t max_dimension();
void set_max_dimension(std::size_t d);

/// Throws kDimension if d exceeds max_dimension().
void check_dimension(std::size_t d, const char *what);

}  // namespace gateverify
