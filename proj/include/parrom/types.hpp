// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_TYPES_HPP
#define PARROM_TYPES_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>
#include <Eigen/Dense>

namespace parrom
{

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// A point in parameter space. Parameters are always real.
using ParamPoint = std::vector<double>;
using ParamView = std::span<const double>;

//
// Error hierarchy. Every failure a caller can act on has its own type; the message carries
// the human-readable detail.
//
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Evaluation point coincides with a pole (up to the scale-invariant threshold).
class PoleHit : public Error
{
public:
  using Error::Error;
};

// Model does not have the block/term structure an operation requires.
class StructureError : public Error
{
public:
  using Error::Error;
};

// A pole has nonnegative real part somewhere on the parameter domain.
class Instability : public Error
{
public:
  Instability(const std::string &msg, int mode, ParamPoint witness)
    : Error(msg), mode_(mode), witness_(std::move(witness))
  {
  }
  int mode() const { return mode_; }
  const ParamPoint &witness() const { return witness_; }

private:
  int mode_;
  ParamPoint witness_;
};

class NonConvergence : public Error
{
public:
  using Error::Error;
};

// Logarithmic kernel evaluated outside its principal-branch domain.
class BranchDomain : public Error
{
public:
  using Error::Error;
};

// Two independent evaluation routes disagree, or an assembled real quantity has a
// non-negligible imaginary part.
class ConsistencyError : public Error
{
public:
  using Error::Error;
};

class UsageError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace parrom

#endif  // PARROM_TYPES_HPP
