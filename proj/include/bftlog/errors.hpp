//  Copyright 2026 The bftlog Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef BFTLOG_ERRORS_HPP_
#define BFTLOG_ERRORS_HPP_

#include <stdexcept>

namespace bftlog {

// Caller bugs. Hostile input is reported through return values instead.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnknownMessageError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class AuthorMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace bftlog

#endif  // BFTLOG_ERRORS_HPP_
