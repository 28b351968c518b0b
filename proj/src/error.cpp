#include "poptree/error.hpp"

namespace poptree {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::invalid_value: return "InvalidValue";
    case Errc::alphabet_overflow: return "AlphabetOverflow";
    case Errc::invalid_pattern: return "InvalidPattern";
    case Errc::invalid_stats: return "InvalidStats";
    case Errc::invalid_segment: return "InvalidSegment";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::io: return "IoError";
    case Errc::parse: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace poptree
