//
// Copyright 2026 The mvgdp Authors
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
//

#ifndef MVGDP_ERROR_HPP_
#define MVGDP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mvgdp {

// Failure categories. The C API maps each one onto an mvg_status value.
enum class ErrorCode {
  kDomain,      // scalar parameter outside its admissible range
  kShape,       // dimension mismatch or zero dimension
  kDegenerate,  // singular or non-orthonormal noise design
  kAllocation,  // invalid precision allocation
  kFormat,      // malformed input file or spec string
  kConfig,      // inconsistent experiment configuration
  kIo,          // file could not be opened or written
  kContract,    // caller-declared bound (gamma, data box) is false
  kInternal,    // a post-condition the library guarantees did not hold
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mvgdp

#endif  // MVGDP_ERROR_HPP_
