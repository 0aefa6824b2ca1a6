#pragma once

#include <stdexcept>
#include <string>

namespace lpp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed caller input (empty id, x == y, bad flag values).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Unparseable bytes or text (wire frames, edge lists, hex).
class ParseError : public Error {
 public:
  using Error::Error;
};

// The peer broke the session contract (bad element, wrong message, length
// mismatch). Sessions abort on this.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Socket / loopback failures, including EOF mid-frame.
class TransportError : public Error {
 public:
  using Error::Error;
};

// A value fell outside a stated domain (binomial k > n, decrypt bound).
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (BA k out of range, unknown parameter set).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpp
