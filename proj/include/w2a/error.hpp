#pragma once

#include <stdexcept>

namespace w2a {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text: weight syntax, document schema, unknown ids.
struct ParseError : Error {
  using Error::Error;
};

/// An operation was called outside its contract (wrong semiring,
/// non-delta-local automaton, ambiguous input, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// A structural invariant that the library itself maintains was broken.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace w2a
