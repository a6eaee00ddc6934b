// Copyright 2026 The chainfix Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace chainfix {

/// Invalid argument to an operation (bad probability, vertex out of range, ...).
class ParameterError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Instance exceeds what an exhaustive routine is willing to enumerate.
class SizeError : public std::length_error {
 public:
    using std::length_error::length_error;
};

/// Assignment missing a model variable or holding a value outside the model's domain.
class AssignmentError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Operation requires a QUBO or Ising model and received the other kind.
class DomainError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Embedding is inconsistent with the logical model or the hardware graph.
class EmbeddingError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Requested clique does not fit on the hardware graph.
class CapacityError : public std::length_error {
 public:
    using std::length_error::length_error;
};

/// Malformed file or document.
class FormatError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace chainfix
