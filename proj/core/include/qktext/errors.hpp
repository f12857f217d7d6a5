// Copyright 2026 The qktext authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qktext {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested size exceeds a hard resource limit (e.g. the qubit cap).
struct CapacityError : Error {
  using Error::Error;
};

// A qubit or element index is out of range or duplicated.
struct IndexError : Error {
  using Error::Error;
};

// Dimensions of two related objects disagree.
struct ShapeError : Error {
  using Error::Error;
};

// A scalar argument is outside its documented domain.
struct ArgumentError : Error {
  using Error::Error;
};

// Input is structurally valid but carries no usable information
// (zero vector, all-OOV document, ...).
struct DegenerateInputError : Error {
  using Error::Error;
};

// Malformed text input. The message carries file/line context.
struct ParseError : Error {
  using Error::Error;
  ParseError(const std::string& file, long line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what) {}
};

// A directory or file tree does not have the expected layout.
struct DataLayoutError : Error {
  using Error::Error;
};

// A labelled collection contains fewer than two classes.
struct DegenerateLabelError : Error {
  using Error::Error;
};

// File could not be opened or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace qktext
