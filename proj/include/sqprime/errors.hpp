// Copyright 2026 The sqprime Authors
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

#include <stdexcept>
#include <string>

namespace sqprime {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Raised when a table would exceed the configured memory cap.
struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two SP numbers sharing their prime give a square Pell discriminant.
struct DistinctPrimeRequired : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// A mathematical identity that must hold was violated.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace sqprime
