#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zipshift {

// Base for every domain error the library raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedWindow : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class NotFiniteType : public Error {
 public:
  using Error::Error;
};

class InvalidSpace : public Error {
 public:
  using Error::Error;
};

class InvalidCode : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class Unrealizable : public Error {
 public:
  using Error::Error;
};

class BadLetter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised by horseshoe::code_point. index >= 0 is a forward iterate, negative a backward one.
class EscapedSquare : public Error {
 public:
  explicit EscapedSquare(long index)
      : Error("point escaped the branch rectangles at iterate " + std::to_string(index)),
        index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

}  // namespace zipshift
