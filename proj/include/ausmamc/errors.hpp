/*
 Copyright 2026 ausmamc contributors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef AUSMAMC_ERRORS_HPP
#define AUSMAMC_ERRORS_HPP

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ausmamc {

/// Invalid inputs or violated scenario invariants. Carries every violation
/// found, not just the first one.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::string message)
      : std::runtime_error(std::move(message)) {}

  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "validation failed:";
    for (const auto& item : v) {
      out += "\n  - " + item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// Config-file syntax problem; message carries file, line, and field.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Filesystem failure while reading or writing run artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ausmamc

#endif  // AUSMAMC_ERRORS_HPP
