#pragma once

// Text grid: one line per row, top row first, row i holding exactly
// n - i + 1 characters from {a, b, g, d, .}, each line LF-terminated.
// JSON: {"n": n, "cells": [[i, j, "a"|"b"], ...]}, cells sorted by (i, j).

#include "staircase/tableau.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace staircase {

/// Throws std::invalid_argument on a malformed grid, a character other
/// than a/b/., or a non-staircase shape.
Tableau parse_grid(std::string_view text);
std::string format_grid(const Tableau& t);

FourSymbolTableau parse_four_symbol_grid(std::string_view text);
std::string format_grid(const FourSymbolTableau& t);

nlohmann::json to_json(const Tableau& t);
Tableau tableau_from_json(const nlohmann::json& j);

char symbol_char(Symbol s) noexcept;
Symbol symbol_from_char(char c);

}  // namespace staircase
