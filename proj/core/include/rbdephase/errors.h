// Copyright 2026 The rbdephase Authors
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

#ifndef RBDEPHASE_ERRORS_H
#define RBDEPHASE_ERRORS_H

#include <stdexcept>
#include <string>

namespace rbdephase {

/// A computation was asked for something its inputs cannot support: an
/// enumeration beyond the cap, a decoherence table too short for the
/// requested sequence length, too few curve points for a fit, and so on.
/// Invalid argument values themselves are reported as std::invalid_argument.
class PreconditionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature finished without reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
   public:
    QuadratureError(const std::string &what, double achieved_error, double requested_tolerance)
        : std::runtime_error(what), achieved_error_(achieved_error), requested_tolerance_(requested_tolerance) {
    }
    double achieved_error() const noexcept {
        return achieved_error_;
    }
    double requested_tolerance() const noexcept {
        return requested_tolerance_;
    }

   private:
    double achieved_error_;
    double requested_tolerance_;
};

/// The phase covariance built from a decoherence table is not positive
/// semidefinite, even after the allowed diagonal jitter.
class CovarianceError : public PreconditionError {
   public:
    CovarianceError(const std::string &what, double min_eigenvalue)
        : PreconditionError(what), min_eigenvalue_(min_eigenvalue) {
    }
    double min_eigenvalue() const noexcept {
        return min_eigenvalue_;
    }

   private:
    double min_eigenvalue_;
};

/// Malformed or unreadable input/output files.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace rbdephase

#endif  // RBDEPHASE_ERRORS_H
