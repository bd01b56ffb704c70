#pragma once

#include <stdexcept>
#include <string>

namespace keylab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operands belong to different groups or backends.
class ParamsMismatchError : public Error {
public:
  using Error::Error;
};

// Value outside the operation's domain (zero inverse, zero scale factor).
class DomainError : public Error {
public:
  using Error::Error;
};

// Canonical byte/hex decoding failed.
class EncodingError : public Error {
public:
  using Error::Error;
};

// Invalid scenario or system configuration, rejected before any protocol step.
class ConfigError : public Error {
public:
  using Error::Error;
};

// An id is already pending in the key-issuing database.
class RegistrationConflict : public Error {
public:
  using Error::Error;
};

// No pending tuple matches the blinded key request.
class AuthenticationFailure : public Error {
public:
  using Error::Error;
};

// Incoming blinded reply failed the signature check; the authority halts.
class ReplyRejected : public Error {
public:
  using Error::Error;
};

// Blinded private key failed the user's verification equation.
class BlindReplyInvalid : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace keylab
