#pragma once

// Symbol sequences: the discretized series every miner works on, plus the
// loaders that produce them from symbol text, FASTA records and numeric
// columns.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace poptree {

struct Symbol {
  std::uint8_t code = 0;

  friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

using Pattern = std::vector<Symbol>;

class Alphabet {
 public:
  static constexpr std::size_t max_size = 256;

  Alphabet() = default;
  // Throws invalid_value on duplicate glyphs, alphabet_overflow past 256.
  explicit Alphabet(std::string glyphs);

  // Labels 'A'..'Z', 'a'..'z', '0'..'9' in that order; at most 62.
  static Alphabet letters(std::size_t count);

  std::size_t size() const noexcept { return glyphs_.size(); }
  bool empty() const noexcept { return glyphs_.empty(); }
  char glyph(Symbol s) const { return glyphs_.at(s.code); }
  std::optional<Symbol> find(char glyph) const noexcept;
  const std::string& glyphs() const noexcept { return glyphs_; }

  // Appends a glyph and returns its symbol.
  Symbol add(char glyph);

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string glyphs_;
};

struct DiscretizationSpec {
  std::size_t bin_count = 1;
  std::string strategy = "equal-width";
  double observed_min = 0.0;
  double observed_max = 0.0;
};

class SymbolSequence {
 public:
  SymbolSequence() = default;
  SymbolSequence(std::vector<Symbol> symbols, Alphabet alphabet, std::string source_name = {});

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::string& source_name() const noexcept { return source_name_; }
  void set_source_name(std::string name) { source_name_ = std::move(name); }

  // Glyph rendering of the whole sequence.
  std::string text() const;

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

 private:
  std::vector<Symbol> symbols_;
  Alphabet alphabet_;
  std::string source_name_;
};

// Pattern <-> glyph text against an alphabet. Unknown glyphs throw
// invalid_pattern.
std::string render(std::span<const Symbol> pattern, const Alphabet& alphabet);
Pattern parse_pattern(std::string_view text, const Alphabet& alphabet);

struct Discretized {
  SymbolSequence sequence;
  DiscretizationSpec spec;
};

// Equal-width binning; the maximum clamps into the top bin and a constant
// series maps entirely to bin 0.
Discretized discretize(std::span<const double> values, std::size_t bin_count);

enum class TextFormat { plain, fasta };

SymbolSequence parse_symbols(std::string_view text, TextFormat format);

// Selects one numeric column from CSV text. `column` is a header name or a
// 0-based index; the first row is treated as a header when its selected
// field is not numeric. Parse failures report the 1-based row number.
std::vector<double> read_csv_column(std::string_view text, const std::string& column);

std::string read_file(const std::string& path);

}  // namespace poptree
