#pragma once

#include <stdexcept>
#include <string>

namespace gmtforms {

// Base of every error the library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A form-space descriptor or grade range violates its invariants.
struct InvalidDescriptor : Error {
  explicit InvalidDescriptor(const std::string& what) : Error(what) {}
};

// Two values that must live in the same space do not.
struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Ambient dimension exceeds the configured cap.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct NotClosed : Error {
  explicit NotClosed(const std::string& what) : Error(what) {}
};

struct NotCoclosed : Error {
  explicit NotCoclosed(const std::string& what) : Error(what) {}
};

struct NotInMT : Error {
  explicit NotInMT(const std::string& what) : Error(what) {}
};

struct ComponentNotHodge : Error {
  explicit ComponentNotHodge(const std::string& what) : Error(what) {}
};

// Raised when a guaranteed-consistent construction fails; always a bug.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace gmtforms
