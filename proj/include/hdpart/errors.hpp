#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

// A table lookup needed entries that nobody has computed.
class MissingDataError : public Error {
 public:
  MissingDataError(std::string table, std::vector<std::string> missing);
  const std::string& table() const { return table_; }
  const std::vector<std::string>& missing() const { return missing_; }
  const char* kind() const noexcept override { return "missing-data"; }

 private:
  std::string table_;
  std::vector<std::string> missing_;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource-limit"; }
};

// Two routes disagreed, or an identity that must hold did not.
class IntegrityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "integrity"; }
};

}  // namespace hdp
