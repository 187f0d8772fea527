#include "staircase/tableau_io.hpp"

#include <stdexcept>
#include <vector>

namespace staircase {

namespace {

std::vector<std::string_view> grid_lines(std::string_view text) {
  if (text.empty() || text.back() != '\n') {
    throw std::invalid_argument("grid must end with a newline");
  }
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    lines.push_back(text.substr(0, eol));
    text.remove_prefix(eol + 1);
  }
  const int n = static_cast<int>(lines.size());
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(lines[i - 1].size()) != n - i + 1) {
      throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                  std::to_string(lines[i - 1].size()) +
                                  " boxes; staircase row needs " + std::to_string(n - i + 1));
    }
  }
  return lines;
}

}  // namespace

char symbol_char(Symbol s) noexcept { return s == Symbol::Alpha ? 'a' : 'b'; }

Symbol symbol_from_char(char c) {
  if (c == 'a') return Symbol::Alpha;
  if (c == 'b') return Symbol::Beta;
  throw std::invalid_argument(std::string("bad symbol character '") + c + "'");
}

Tableau parse_grid(std::string_view text) {
  const auto lines = grid_lines(text);
  const int n = static_cast<int>(lines.size());
  std::vector<detail::Cell> cells(box_count(n), detail::Cell::Empty);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n - i + 1; ++j) {
      const char c = lines[i - 1][j - 1];
      if (c == '.') continue;
      cells[storage_index(n, {i, j})] = detail::to_cell(symbol_from_char(c));
    }
  }
  return Tableau::from_cells(n, std::move(cells));
}

std::string format_grid(const Tableau& t) {
  std::string out;
  const int n = t.size();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n - i + 1; ++j) {
      const auto c = t.at(Box{i, j});
      out.push_back(c ? symbol_char(*c) : '.');
    }
    out.push_back('\n');
  }
  return out;
}

FourSymbolTableau parse_four_symbol_grid(std::string_view text) {
  const auto lines = grid_lines(text);
  const int n = static_cast<int>(lines.size());
  std::vector<std::optional<FourSymbol>> cells(box_count(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n - i + 1; ++j) {
      auto& cell = cells[storage_index(n, {i, j})];
      switch (lines[i - 1][j - 1]) {
        case '.': break;
        case 'a': cell = FourSymbol::Alpha; break;
        case 'b': cell = FourSymbol::Beta; break;
        case 'g': cell = FourSymbol::Gamma; break;
        case 'd': cell = FourSymbol::Delta; break;
        default:
          throw std::invalid_argument(std::string("bad symbol character '") +
                                      lines[i - 1][j - 1] + "'");
      }
    }
  }
  return FourSymbolTableau(n, std::move(cells));
}

std::string format_grid(const FourSymbolTableau& t) {
  static constexpr char kChars[] = {'a', 'b', 'g', 'd'};
  std::string out;
  const int n = t.size();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n - i + 1; ++j) {
      const auto c = t.at(Box{i, j});
      out.push_back(c ? kChars[static_cast<int>(*c)] : '.');
    }
    out.push_back('\n');
  }
  return out;
}

nlohmann::json to_json(const Tableau& t) {
  auto cells = nlohmann::json::array();
  const int n = t.size();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n - i + 1; ++j) {
      if (const auto c = t.at(Box{i, j})) {
        cells.push_back({i, j, std::string(1, symbol_char(*c))});
      }
    }
  }
  return {{"n", n}, {"cells", std::move(cells)}};
}

Tableau tableau_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("cells")) {
    throw std::invalid_argument("tableau JSON needs 'n' and 'cells'");
  }
  const int n = j.at("n").get<int>();
  auto t = Tableau::empty(n);
  std::vector<detail::Cell> cells(box_count(n), detail::Cell::Empty);
  for (const auto& e : j.at("cells")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("cell entry must be [i, j, s]");
    const Box b{e[0].get<int>(), e[1].get<int>()};
    if (!t.contains(b)) throw std::invalid_argument("cell outside the staircase");
    const auto s = e[2].get<std::string>();
    if (s.size() != 1) throw std::invalid_argument("bad symbol '" + s + "'");
    cells[storage_index(n, b)] = detail::to_cell(symbol_from_char(s[0]));
  }
  return Tableau::from_cells(n, std::move(cells));
}

}  // namespace staircase
