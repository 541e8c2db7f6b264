// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xxzgap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric parameter (M, delta, sizes, particle numbers, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidSize : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Self-loops, duplicate edges or out-of-range vertex ids.
class InvalidGraph : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DisconnectedGraph : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidParticleNumber : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Raised when an analysis requires the droplet regime delta > M.
class InvalidDelta : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A requested object would exceed one of the configured size limits.
class DimensionCap : public Error {
 public:
  DimensionCap(const std::string& what, std::size_t requested, std::size_t limit)
      : Error(what + " (requested " + std::to_string(requested) + ", limit " +
              std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, int iterations)
      : Error(what + " after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}

  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// The shift passed to an inertia count is (numerically) an eigenvalue.
class SingularShift : public Error {
 public:
  using Error::Error;
};

/// A computed eigenvalue contradicts a gap certificate (an implementation bug).
class CertificateViolation : public Error {
 public:
  CertificateViolation(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Malformed text input (edge lists, field files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace xxzgap
