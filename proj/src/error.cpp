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

#include "gateverify/error.hpp"

#include <atomic>

namespace gateverify {

namespace {
std::atomic<std::size_t> g_max_dimension{64};
}

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "invalid argument";
        case ErrorCode::kDimension:
            return "dimension error";
        case ErrorCode::kUnsupported:
            return "unsupported";
        case ErrorCode::kNotHermitian:
            return "not hermitian";
        case ErrorCode::kInvariant:
            return "invariant violated";
        case ErrorCode::kNotStabilizer:
            return "not a stabilizer state";
        case ErrorCode::kNotProduct:
            return "not a product state";
        case ErrorCode::kSchema:
            return "schema violation";
        case ErrorCode::kIo:
            return "i/o error";
        case ErrorCode::kNumeric:
            return "numerical failure";
    }
    return "unknown error";
}

Error::Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

std::size_t max_dimension() {
    return g_max_dimension.load(std::memory_order_relaxed);
}

void set_max_dimension(std::size_t d) {
    require(d >= 2, ErrorCode::kInvalidArgument, "dimension cap must be at least 2");
    g_max_dimension.store(d, std::memory_order_relaxed);
}

void check_dimension(std::size_t d, const char *what) {
    if (d > max_dimension()) {
        fail(ErrorCode::kDimension,
             std::string(what) + ": dimension " + std::to_string(d) + " exceeds the cap of " +
                 std::to_string(max_dimension()));
    }
}

}  // namespace gateverify
