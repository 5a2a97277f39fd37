#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proofsys
{

/// Base of every error thrown by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input vector length does not match a circuit's input count.
class arity_error : public error
{
public:
  using error::error;
};

/// Malformed text input. `line()` is 1-based; 0 when no line applies.
class parse_error : public error
{
public:
  parse_error( std::size_t line, const std::string& what )
      : error( line == 0 ? what : "line " + std::to_string( line ) + ": " + what ), line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A well-formed object violates a structural invariant (forward references,
/// unstructured branching programs, ...).
class structure_error : public error
{
public:
  using error::error;
};

/// A word is not a valid encoding for the language (asymmetric adjacency
/// matrix, non-square length, ...).
class encoding_error : public error
{
public:
  using error::error;
};

/// A proof system cannot be built for the requested parameters.
class synthesis_error : public error
{
public:
  using error::error;
};

/// No proof can be produced for the requested word.
class witness_error : public error
{
public:
  using error::error;
};

/// An enumeration would exceed the configured evaluation budget.
class budget_error : public error
{
public:
  using error::error;
};

} // namespace proofsys
