/*
   Copyright 2026 The rpf-lab Authors

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

#pragma once

#include <stdexcept>
#include <string>

namespace rpf {

/// Bad caller input: wrong cardinality, empty sample set, invalid spec.
/// The CLI maps these to exit code 2.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (e.g. |x| >= |y|
/// in a Taylor tail, a point at the origin inside an annulus sum).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument outside a documented accuracy range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Iterative method failed (eigensolver non-convergence, SDE step failure).
/// The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rpf
