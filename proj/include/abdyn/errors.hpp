/*
   Copyright 2026 The abdyn Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ABDYN_ERRORS_HPP
#define ABDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abdyn {

// Violated precondition or invariant of an operation.
class ContractError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// Shape mismatch (non-square input, inconsistent block sizes, ...).
class DimensionError : public ContractError {
   public:
    using ContractError::ContractError;
};

// Floating-point stage failed to produce a trustworthy answer.
class NumericError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// A rank decision fell inside the indeterminacy band around the threshold.
class IndeterminateRank : public NumericError {
   public:
    using NumericError::NumericError;
};

// Malformed JSON payload.
class SchemaError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractError(what);
}

inline void require_dims(bool cond, const std::string& what) {
    if (!cond) throw DimensionError(what);
}

}  // namespace detail

}  // namespace abdyn

#endif  // ABDYN_ERRORS_HPP
