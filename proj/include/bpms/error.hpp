// SPDX-License-Identifier: Apache-2.0
//
// bpms - beamforming for joint bistatic positioning and monostatic sensing
// Copyright (C) 2026 The bpms authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace bpms
{

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Coincident points or zero-length legs in the scenario geometry.
class DegenerateGeometryError : public Error
{
  public:
    using Error::Error;
};

// Invalid or inconsistent user configuration (bad config file, unknown scheme, ...).
class ConfigError : public Error
{
  public:
    using Error::Error;
};

class DimensionError : public Error
{
  public:
    using Error::Error;
};

class PreconditionError : public Error
{
  public:
    using Error::Error;
};

// The FIM is singular (or numerically so) and some parameters cannot be estimated.
class UnidentifiableError : public Error
{
  public:
    UnidentifiableError(const std::string &what, int null_space_dimension)
        : Error(what + " (null-space dimension " + std::to_string(null_space_dimension) + ")"),
          null_space_dimension_(null_space_dimension)
    {
    }

    int null_space_dimension() const noexcept { return null_space_dimension_; }

  private:
    int null_space_dimension_;
};

class SolverError : public Error
{
  public:
    using Error::Error;
};

// The beamformer-mismatch target is zero, so the full-power minimizer is not unique.
class DegenerateMismatchError : public Error
{
  public:
    using Error::Error;
};

} // namespace bpms
