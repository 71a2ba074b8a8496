#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSymmetric : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct BadBoundaries : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct MismatchedBlockCount : Error {
  using Error::Error;
};
struct TooManyBlocks : Error {
  using Error::Error;
};
struct UnequalBlockMasses : Error {
  using Error::Error;
};
struct BadGrid : Error {
  using Error::Error;
};
struct PointOutOfRange : Error {
  using Error::Error;
};
struct BadParameter : Error {
  using Error::Error;
};
struct BadDepth : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace graphon
