// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fakta {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class EmptyQuery : public Error {
 public:
  EmptyQuery() : Error("query has no eligible terms") {}
};

class CannotRelax : public Error {
 public:
  CannotRelax() : Error("cannot relax an empty query") {}
};

class BuildError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class InvalidUrl : public Error {
 public:
  explicit InvalidUrl(const std::string& url) : Error("invalid url: '" + url + "'") {}
};

class EmptyText : public Error {
 public:
  EmptyText() : Error("empty text") {}
};

class ModelMismatch : public Error {
 public:
  using Error::Error;
};

class NoDocuments : public Error {
 public:
  NoDocuments() : Error("no documents to aggregate") {}
};

class PipelineError : public Error {
 public:
  using Error::Error;
};

}  // namespace fakta
