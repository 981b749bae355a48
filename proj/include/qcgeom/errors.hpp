// Copyright 2026 The qcgeom Authors
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

#include <complex>
#include <stdexcept>
#include <string>

namespace qcgeom {

/// Argument outside the domain of an operation (bad qubit count, mismatched
/// dimensions, nonpositive step sizes).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input failed a structural invariant (Hermiticity, unitarity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hermitian input carries a nonzero identity component.
class IdentityComponentError : public ValidationError {
 public:
  explicit IdentityComponentError(std::complex<double> trace)
      : ValidationError("identity component present: trace = (" +
                        std::to_string(trace.real()) + ", " +
                        std::to_string(trace.imag()) + ")"),
        trace_(trace) {}
  std::complex<double> trace() const { return trace_; }

 private:
  std::complex<double> trace_;
};

/// Unitary too close to the principal-logarithm branch cut (eigenvalue -1).
class BranchCutError : public std::runtime_error {
 public:
  explicit BranchCutError(std::complex<double> eigenvalue)
      : std::runtime_error("antipodal/branch: eigenvalue (" +
                           std::to_string(eigenvalue.real()) + ", " +
                           std::to_string(eigenvalue.imag()) +
                           ") lies on the principal branch cut"),
        eigenvalue_(eigenvalue) {}
  std::complex<double> closest_eigenvalue() const { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

/// A caller broke an operation's precondition contract.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Mean Hamiltonian coefficient outside [-1, 1] handed to gate synthesis.
class CoefficientBoundError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A user-supplied norm produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optimizer exhausted its budget without a feasible path.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(double best_endpoint_error)
      : std::runtime_error("infeasible within budget: best endpoint error " +
                           std::to_string(best_endpoint_error)),
        best_error_(best_endpoint_error) {}
  double best_endpoint_error() const { return best_error_; }

 private:
  double best_error_;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcgeom
