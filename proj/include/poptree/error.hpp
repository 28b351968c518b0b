#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace poptree {

enum class Errc {
  empty_input,
  invalid_value,
  alphabet_overflow,
  invalid_pattern,
  invalid_stats,
  invalid_segment,
  invalid_config,
  io,
  parse,
};

const char* to_string(Errc code) noexcept;

// All library failures surface as this exception. `index` carries the
// offending element (value index, CSV row) when one exists.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace poptree
