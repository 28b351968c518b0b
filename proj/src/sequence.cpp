#include "poptree/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "poptree/error.hpp"

namespace poptree {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  // strtod accepts "nan"/"inf"; callers reject non-finite separately.
  std::string buf(field);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

Alphabet::Alphabet(std::string glyphs) {
  for (char g : glyphs) add(g);
}

Alphabet Alphabet::letters(std::size_t count) {
  static constexpr std::string_view labels =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  if (count > labels.size()) {
    throw Error(Errc::alphabet_overflow,
                "at most " + std::to_string(labels.size()) + " letter labels are available");
  }
  return Alphabet(std::string(labels.substr(0, count)));
}

std::optional<Symbol> Alphabet::find(char glyph) const noexcept {
  const auto at = glyphs_.find(glyph);
  if (at == std::string::npos) return std::nullopt;
  return Symbol{static_cast<std::uint8_t>(at)};
}

Symbol Alphabet::add(char glyph) {
  if (find(glyph)) {
    throw Error(Errc::invalid_value, std::string("duplicate glyph '") + glyph + "'");
  }
  if (glyphs_.size() >= max_size) {
    throw Error(Errc::alphabet_overflow, "more than 256 distinct symbols");
  }
  glyphs_.push_back(glyph);
  return Symbol{static_cast<std::uint8_t>(glyphs_.size() - 1)};
}

SymbolSequence::SymbolSequence(std::vector<Symbol> symbols, Alphabet alphabet,
                               std::string source_name)
    : symbols_(std::move(symbols)),
      alphabet_(std::move(alphabet)),
      source_name_(std::move(source_name)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].code >= alphabet_.size()) {
      throw Error(Errc::invalid_value, "symbol code outside alphabet", i);
    }
  }
}

std::string SymbolSequence::text() const { return render(symbols_, alphabet_); }

std::string render(std::span<const Symbol> pattern, const Alphabet& alphabet) {
  std::string out;
  out.reserve(pattern.size());
  for (Symbol s : pattern) out.push_back(alphabet.glyph(s));
  return out;
}

Pattern parse_pattern(std::string_view text, const Alphabet& alphabet) {
  Pattern out;
  out.reserve(text.size());
  for (char c : text) {
    const auto s = alphabet.find(c);
    if (!s) throw Error(Errc::invalid_pattern, std::string("glyph '") + c + "' not in alphabet");
    out.push_back(*s);
  }
  return out;
}

Discretized discretize(std::span<const double> values, std::size_t bin_count) {
  if (values.empty()) throw Error(Errc::empty_input, "no values to discretize");
  if (bin_count == 0) throw Error(Errc::invalid_config, "bin_count must be >= 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::invalid_value, "non-finite value at index " + std::to_string(i), i);
    }
  }
  auto alphabet = Alphabet::letters(bin_count);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double max = *hi;
  const double width = (max - min) / static_cast<double>(bin_count);

  std::vector<Symbol> symbols;
  symbols.reserve(values.size());
  for (double v : values) {
    std::size_t bin = 0;
    if (max > min) {
      const double raw = std::floor((v - min) / width);
      bin = raw <= 0.0 ? 0 : std::min(static_cast<std::size_t>(raw), bin_count - 1);
    }
    symbols.push_back(Symbol{static_cast<std::uint8_t>(bin)});
  }
  return {SymbolSequence(std::move(symbols), std::move(alphabet)),
          DiscretizationSpec{bin_count, "equal-width", min, max}};
}

SymbolSequence parse_symbols(std::string_view text, TextFormat format) {
  Alphabet alphabet;
  std::vector<Symbol> symbols;
  bool line_start = true;
  bool in_header = false;
  for (char c : text) {
    if (c == '\n') {
      line_start = true;
      in_header = false;
      continue;
    }
    if (line_start && format == TextFormat::fasta && c == '>') in_header = true;
    line_start = false;
    if (in_header || is_space(c)) continue;
    auto s = alphabet.find(c);
    symbols.push_back(s ? *s : alphabet.add(c));
  }
  if (symbols.empty()) throw Error(Errc::empty_input, "no symbols in input");
  return SymbolSequence(std::move(symbols), std::move(alphabet));
}

std::vector<double> read_csv_column(std::string_view text, const std::string& column) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      lines.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }
  // Blank lines are skipped but still counted for row numbers.
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw Error(Errc::empty_input, "CSV has no rows");

  const auto head = split_fields(lines[first]);
  std::optional<std::size_t> index;
  bool has_header = false;
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (trim(head[i]) == column && !parse_double(head[i])) {
      index = i;
      has_header = true;
      break;
    }
  }
  if (!index) {
    std::size_t parsed = 0;
    const auto* b = column.data();
    const auto [p, ec] = std::from_chars(b, b + column.size(), parsed);
    if (ec != std::errc{} || p != b + column.size()) {
      throw Error(Errc::invalid_config, "CSV column '" + column + "' not found");
    }
    index = parsed;
    has_header = *index < head.size() && !parse_double(head[*index]);
  }

  std::vector<double> out;
  for (std::size_t row = first + (has_header ? 1 : 0); row < lines.size(); ++row) {
    if (trim(lines[row]).empty()) continue;
    const auto fields = split_fields(lines[row]);
    const auto row_number = row + 1;
    if (*index >= fields.size()) {
      throw Error(Errc::parse, "row " + std::to_string(row_number) + " has no column " +
                                   std::to_string(*index), row_number);
    }
    const auto v = parse_double(fields[*index]);
    if (!v) {
      throw Error(Errc::parse, "row " + std::to_string(row_number) + ": '" +
                                   std::string(trim(fields[*index])) + "' is not numeric",
                  row_number);
    }
    if (!std::isfinite(*v)) {
      throw Error(Errc::invalid_value, "row " + std::to_string(row_number) + " is not finite",
                  row_number);
    }
    out.push_back(*v);
  }
  if (out.empty()) throw Error(Errc::empty_input, "CSV column has no values");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace poptree
