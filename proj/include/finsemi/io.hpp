#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finsemi/congruence.hpp"
#include "finsemi/error.hpp"
#include "finsemi/inverse_system.hpp"
#include "finsemi/morphism.hpp"
#include "finsemi/semigroup.hpp"

// Text formats.
//
// Semigroup file:
//   semigroup <n>
//   <n rows of n space-separated indices>
//   labels <l0> ... <l(n-1)>        (optional)
// Lines whose first non-blank character is '#' are comments; blank lines are
// ignored.
//
// Tower file: a `tower` header, then `level <path>` or an inline
// `level semigroup <n>` followed by its rows, with `map <images>` after every
// level but the first (the map from that level down to the previous one).

namespace finsemi::io {

namespace detail {

  inline std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t                   i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
        ++i;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
        ++j;
      }
      if (j > i) {
        out.push_back(line.substr(i, j - i));
      }
      i = j;
    }
    return out;
  }

  // Meaningful lines with their 1-based numbers.
  class Cursor {
   public:
    explicit Cursor(std::string_view text) {
      std::size_t number = 0, start = 0;
      while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
          end = text.size();
        }
        ++number;
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
          line.remove_suffix(1);
        }
        auto words = split_words(line);
        if (!words.empty() && words[0].front() != '#') {
          lines_.push_back({number, std::move(words)});
        }
        if (end == text.size()) {
          break;
        }
        start = end + 1;
      }
      last_ = number;
    }

    bool done() const noexcept { return pos_ == lines_.size(); }

    std::vector<std::string_view> const& words() const {
      return lines_[pos_].second;
    }

    std::size_t line() const noexcept {
      return done() ? last_ : lines_[pos_].first;
    }

    void advance() { ++pos_; }

   private:
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines_;
    std::size_t pos_  = 0;
    std::size_t last_ = 0;
  };

  inline std::uint64_t parse_index(std::string_view word, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(),
                                     value);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
      throw ParseError(line, "expected a non-negative integer, got '"
                                 + std::string(word) + "'");
    }
    return value;
  }

  // The header "semigroup <n>" starts at word `offset` of the current line.
  inline FiniteSemigroup parse_semigroup_at(Cursor& in, std::size_t offset = 0) {
    if (in.done()) {
      throw ParseError(in.line(), "expected 'semigroup <n>'");
    }
    auto const& head = in.words();
    if (head.size() != offset + 2 || head[offset] != "semigroup") {
      throw ParseError(in.line(), "expected 'semigroup <n>'");
    }
    auto const n = parse_index(head[offset + 1], in.line());
    if (n == 0) {
      throw ParseError(in.line(), "order must be positive");
    }
    if (n > (std::uint64_t{1} << 16)) {
      throw ParseError(in.line(), "order " + std::to_string(n)
                                      + " is too large for a table file");
    }
    in.advance();
    std::vector<std::uint64_t> flat;
    flat.reserve(n * n);
    for (std::uint64_t r = 0; r < n; ++r) {
      if (in.done()) {
        throw ParseError(in.line(), "expected " + std::to_string(n)
                                        + " table rows, got "
                                        + std::to_string(r));
      }
      auto const& row = in.words();
      if (row.size() != n) {
        throw ParseError(in.line(), "row has " + std::to_string(row.size())
                                        + " entries, expected "
                                        + std::to_string(n));
      }
      for (auto w : row) {
        flat.push_back(parse_index(w, in.line()));
      }
      in.advance();
    }
    std::vector<std::string> labels;
    if (!in.done() && in.words()[0] == "labels") {
      auto const& words = in.words();
      if (words.size() != n + 1) {
        throw ParseError(in.line(), "expected " + std::to_string(n)
                                        + " labels, got "
                                        + std::to_string(words.size() - 1));
      }
      for (std::size_t i = 1; i < words.size(); ++i) {
        labels.emplace_back(words[i]);
      }
      in.advance();
    }
    return validate_table(n, std::span<std::uint64_t const>(flat),
                          std::move(labels));
  }

  inline std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InvalidArgument("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

}  // namespace detail

inline FiniteSemigroup parse_semigroup(std::string_view text) {
  detail::Cursor in(text);
  auto           S = detail::parse_semigroup_at(in);
  if (!in.done()) {
    throw ParseError(in.line(), "unexpected content after the table");
  }
  return S;
}

inline FiniteSemigroup load_semigroup(std::filesystem::path const& path) {
  return parse_semigroup(detail::read_file(path));
}

inline std::string format_semigroup(FiniteSemigroup const& S) {
  std::string out = "semigroup " + std::to_string(S.order()) + "\n";
  for (Element a = 0; a < S.order(); ++a) {
    auto row = S.row(a);
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (b != 0) {
        out += ' ';
      }
      out += std::to_string(row[b]);
    }
    out += '\n';
  }
  if (S.has_labels()) {
    out += "labels";
    for (auto const& l : S.labels()) {
      out += ' ' + l;
    }
    out += '\n';
  }
  return out;
}

// "{0 2}{1 3}", blocks by least member.
inline std::string format_congruence(Congruence const& c) {
  std::string out;
  for (auto const& block : c.blocks()) {
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += std::to_string(block[i]);
    }
    out += '}';
  }
  return out;
}

// Accepts "{0 2}{1 3}" (commas also separate elements) and the keywords
// `universal` and `equality`.
inline Congruence parse_congruence(FiniteSemigroup const& S,
                                   std::string_view       text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  };
  text = trim(text);
  if (text == "universal") {
    return Congruence::universal(S);
  }
  if (text == "equality") {
    return Congruence::equality(S);
  }
  std::vector<std::vector<Element>> blocks;
  bool                              open = false;
  std::size_t                       i    = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '{') {
      if (open) {
        throw InvalidArgument("nested '{' in congruence literal");
      }
      open = true;
      blocks.emplace_back();
      ++i;
    } else if (ch == '}') {
      if (!open) {
        throw InvalidArgument("unbalanced '}' in congruence literal");
      }
      open = false;
      ++i;
    } else if (ch == ' ' || ch == ',' || ch == '\t') {
      ++i;
    } else if (ch >= '0' && ch <= '9') {
      if (!open) {
        throw InvalidArgument("element outside a block in congruence literal");
      }
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
        ++j;
      }
      std::uint64_t v = 0;
      std::from_chars(text.data() + i, text.data() + j, v);
      if (v >= S.order()) {
        throw InvalidArgument("element " + std::string(text.substr(i, j - i))
                              + " out of range");
      }
      blocks.back().push_back(static_cast<Element>(v));
      i = j;
    } else {
      throw InvalidArgument("unexpected character '" + std::string(1, ch)
                            + "' in congruence literal");
    }
  }
  if (open) {
    throw InvalidArgument("unterminated block in congruence literal");
  }
  return Congruence::from_blocks(S, blocks);
}

// Members separated by ';', coarsest first.
inline std::vector<Congruence> parse_family(FiniteSemigroup const& S,
                                            std::string_view       text) {
  std::vector<Congruence> out;
  std::size_t             start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto part = text.substr(start, end - start);
    if (part.find_first_not_of(" \t") != std::string_view::npos) {
      out.push_back(parse_congruence(S, part));
    }
    start = end + 1;
  }
  if (out.empty()) {
    throw InvalidArgument("empty family");
  }
  return out;
}

inline InverseSystem parse_tower(std::string_view             text,
                                 std::filesystem::path const& base_dir = {}) {
  detail::Cursor in(text);
  if (in.done() || in.words().size() != 1 || in.words()[0] != "tower") {
    throw ParseError(in.line(), "expected 'tower'");
  }
  in.advance();
  std::vector<FiniteSemigroup> levels;
  std::vector<Morphism>        maps;
  while (!in.done()) {
    auto const& words = in.words();
    if (words[0] == "level") {
      if (!levels.empty() && levels.size() != maps.size() + 1) {
        throw ParseError(in.line(), "expected 'map' before the next level");
      }
      if (words.size() == 3 && words[1] == "semigroup") {
        levels.push_back(detail::parse_semigroup_at(in, 1));
      } else if (words.size() == 2) {
        auto path = base_dir / std::filesystem::path(std::string(words[1]));
        levels.push_back(load_semigroup(path));
        in.advance();
      } else {
        throw ParseError(in.line(), "expected 'level <path>' or "
                                    "'level semigroup <n>'");
      }
    } else if (words[0] == "map") {
      if (levels.size() != maps.size() + 2) {
        throw ParseError(in.line(), "'map' must follow a new level");
      }
      std::vector<Element> images;
      for (std::size_t i = 1; i < words.size(); ++i) {
        auto v = detail::parse_index(words[i], in.line());
        if (v >= levels[levels.size() - 2].order()) {
          throw ParseError(in.line(), "map entry out of range");
        }
        images.push_back(static_cast<Element>(v));
      }
      if (images.size() != levels.back().order()) {
        throw ParseError(in.line(), "map has " + std::to_string(images.size())
                                        + " entries, expected "
                                        + std::to_string(
                                            levels.back().order()));
      }
      maps.push_back(check_morphism(std::move(images), levels.back(),
                                    levels[levels.size() - 2]));
      in.advance();
    } else {
      throw ParseError(in.line(), "expected 'level' or 'map'");
    }
  }
  if (levels.empty()) {
    throw ParseError(in.line(), "tower has no levels");
  }
  if (maps.size() + 1 != levels.size()) {
    throw ParseError(in.line(), "the last level has no 'map'");
  }
  return InverseSystem::make(std::move(levels), std::move(maps));
}

inline InverseSystem load_tower(std::filesystem::path const& path) {
  return parse_tower(detail::read_file(path), path.parent_path());
}

// Inline form of a tower.
inline std::string format_tower(InverseSystem const& sys) {
  std::string out = "tower\n";
  for (std::size_t i = 0; i < sys.size(); ++i) {
    out += "level " + format_semigroup(sys.levels()[i]);
    if (i > 0) {
      out += "map";
      for (Element x : sys.connecting()[i - 1].map()) {
        out += ' ' + std::to_string(x);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace finsemi::io
