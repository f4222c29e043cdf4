#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace finsemi {

using Element = std::uint32_t;

// Error classes map one-to-one onto CLI exit codes: domain 1, usage 2, cap 3.
enum class ErrorKind { domain, usage, cap };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(std::string const& what)
      : Error(ErrorKind::usage, what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string const& what)
      : Error(ErrorKind::usage,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class OutOfRangeEntry : public Error {
 public:
  OutOfRangeEntry(std::size_t row, std::size_t col, std::uint64_t value)
      : Error(ErrorKind::domain,
              "table entry at (" + std::to_string(row) + ", "
                  + std::to_string(col) + ") is " + std::to_string(value)
                  + ", out of range"),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_, col_;
};

class NotAssociative : public Error {
 public:
  NotAssociative(Element a, Element b, Element c)
      : Error(ErrorKind::domain,
              "not associative at (" + std::to_string(a) + ", "
                  + std::to_string(b) + ", " + std::to_string(c) + ")"),
        a_(a),
        b_(b),
        c_(c) {}

  Element a() const noexcept { return a_; }
  Element b() const noexcept { return b_; }
  Element c() const noexcept { return c_; }

 private:
  Element a_, b_, c_;
};

class NotAHomomorphism : public Error {
 public:
  NotAHomomorphism(Element a, Element b)
      : Error(ErrorKind::domain,
              "not a homomorphism at pair (" + std::to_string(a) + ", "
                  + std::to_string(b) + ")"),
        a_(a),
        b_(b) {}

  Element a() const noexcept { return a_; }
  Element b() const noexcept { return b_; }

 private:
  Element a_, b_;
};

// Raised when a labelling is not compatible with the multiplication.
class NotACongruence : public Error {
 public:
  NotACongruence(Element a, Element b, Element s)
      : Error(ErrorKind::domain,
              "partition is not a congruence: " + std::to_string(a) + " ~ "
                  + std::to_string(b) + " is not preserved by translation by "
                  + std::to_string(s)),
        a_(a),
        b_(b),
        s_(s) {}

  Element a() const noexcept { return a_; }
  Element b() const noexcept { return b_; }
  Element s() const noexcept { return s_; }

 private:
  Element a_, b_, s_;
};

class CarrierMismatch : public Error {
 public:
  CarrierMismatch()
      : Error(ErrorKind::domain, "operands live on different semigroups") {}
};

class NotInvariant : public Error {
 public:
  NotInvariant(Element a, Element b)
      : Error(ErrorKind::domain,
              "map does not respect the congruence at pair ("
                  + std::to_string(a) + ", " + std::to_string(b) + ")"),
        a_(a),
        b_(b) {}

  Element a() const noexcept { return a_; }
  Element b() const noexcept { return b_; }

 private:
  Element a_, b_;
};

class NotFullyInvariant : public Error {
 public:
  NotFullyInvariant(std::string const& endo, Element a, Element b)
      : Error(ErrorKind::domain,
              "congruence is not fully invariant: endomorphism " + endo
                  + " separates related pair (" + std::to_string(a) + ", "
                  + std::to_string(b) + ")") {}
};

class NotAChain : public Error {
 public:
  NotAChain(std::size_t i, std::size_t j)
      : Error(ErrorKind::domain,
              "family is not a refinement chain: member " + std::to_string(j)
                  + " does not refine member " + std::to_string(i)),
        i_(i),
        j_(j) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_, j_;
};

class NoEqualityMember : public Error {
 public:
  NoEqualityMember()
      : Error(ErrorKind::domain,
              "family has no equality member, so it does not separate "
              "points") {}
};

class NotGenerating : public Error {
 public:
  NotGenerating()
      : Error(ErrorKind::domain, "the given set does not generate") {}
};

class LevelOutOfRange : public Error {
 public:
  explicit LevelOutOfRange(std::size_t i)
      : Error(ErrorKind::domain,
              "level " + std::to_string(i) + " is out of range") {}
};

class NotSurjective : public Error {
 public:
  explicit NotSurjective(std::size_t i)
      : Error(ErrorKind::domain,
              "connecting map " + std::to_string(i) + " is not surjective") {}
};

class SizeBoundExceeded : public Error {
 public:
  SizeBoundExceeded(std::string const& what, std::uint64_t size,
                    std::uint64_t bound)
      : Error(ErrorKind::cap,
              what + " of size " + std::to_string(size)
                  + " exceeds the size bound " + std::to_string(bound)) {}
};

class EnumerationCapExceeded : public Error {
 public:
  EnumerationCapExceeded(std::string const& what, std::uint64_t cap)
      : Error(ErrorKind::cap,
              what + " exceeds the enumeration cap " + std::to_string(cap)) {}
};

class OracleBoundExceeded : public Error {
 public:
  OracleBoundExceeded(std::uint64_t maps, std::uint64_t bound)
      : Error(ErrorKind::cap,
              "brute force over " + std::to_string(maps)
                  + " maps exceeds the oracle bound "
                  + std::to_string(bound)) {}
};

// Thrown when a checked mathematical invariant fails; always a defect.
class InternalError : public Error {
 public:
  explicit InternalError(std::string const& what)
      : Error(ErrorKind::domain, "internal invariant violated: " + what) {}
};

}  // namespace finsemi
