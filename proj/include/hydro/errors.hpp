// SPDX-License-Identifier: Apache-2.0
//
// hydrolink - underwater acoustic link simulation and target detection

#pragma once

#include <stdexcept>
#include <string>

namespace hydro {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// A value violates its domain constraint (depth outside the waveguide, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Source and receiver coincide, or a geometric construction collapses.
class DegenerateGeometryError : public Error {
  public:
    using Error::Error;
};

/// A queried position lies outside the lattice hull of a grid map.
class OutOfBoundsError : public Error {
  public:
    using Error::Error;
};

/// Grid-map set is empty or otherwise unusable.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// File does not start with the expected magic bytes.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// File carries an unsupported format version.
class VersionError : public Error {
  public:
    using Error::Error;
};

/// File ends before the payload announced by its header.
class TruncationError : public Error {
  public:
    using Error::Error;
};

/// Whole-file checksum does not match the stored one.
class ChecksumError : public Error {
  public:
    using Error::Error;
};

/// Trajectory does not cover the requested time span.
class ExtentError : public Error {
  public:
    using Error::Error;
};

/// A negative propagation delay was requested.
class CausalityError : public Error {
  public:
    using Error::Error;
};

/// Simulated geometry left the pre-computed grid coverage.
class CoverageError : public Error {
  public:
    using Error::Error;
};

/// No CIR tap exceeded the detection floor.
class NoDetectionError : public Error {
  public:
    using Error::Error;
};

/// An artifact required by a pipeline stage is missing on disk.
class MissingArtifactError : public Error {
  public:
    using Error::Error;
};

} // namespace hydro
