#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different fields (e.g. Q and F_5, or F_5 and F_7).
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (cube points, matrix entries, term counts) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NotMultilinear : public Error {
 public:
  using Error::Error;
};

/// The axiom vanishes at a Boolean point, so no inverse over the cube exists.
/// `point` lists (variable name, bit) in the cube's variable order.
class SatisfiablePoint : public Error {
 public:
  SatisfiablePoint(std::string what, std::vector<std::pair<std::string, int>> point)
      : Error(std::move(what)), point_(std::move(point)) {}

  const std::vector<std::pair<std::string, int>>& point() const { return point_; }

 private:
  std::vector<std::pair<std::string, int>> point_;
};

}  // namespace nsbench
