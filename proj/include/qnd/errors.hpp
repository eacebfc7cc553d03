// Copyright 2026 The qndsim Authors
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

namespace qnd {

/// Base class for every error signaled by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A parameter group violates one of its invariants. The message names the field.
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

/// Not enough events to form an estimate (no down-jumps, empty fit window, ...).
class InsufficientStatistics : public Error {
   public:
    using Error::Error;
};

/// The model is not identifiable from the data (constant series, coincident x).
class DegenerateFit : public Error {
   public:
    using Error::Error;
};

/// Iterative fit hit its iteration cap.
class FitDidNotConverge : public Error {
   public:
    FitDidNotConverge(const std::string& what, double residual_norm, int iterations)
        : Error(what), residual_norm_(residual_norm), iterations_(iterations) {}

    double residual_norm() const noexcept { return residual_norm_; }
    int iterations() const noexcept { return iterations_; }

   private:
    double residual_norm_;
    int iterations_;
};

/// Malformed configuration or data file.
class ParseError : public Error {
   public:
    using Error::Error;
};

/// Output could not be written.
class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace qnd
