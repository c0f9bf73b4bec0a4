#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "zipshift/codes.hpp"
#include "zipshift/space.hpp"

namespace zipshift {

// Space spec (JSON):
//   alphabet_a, alphabet_a_prime: lists of symbol names
//   n: window; phi: {"<A' word>": "<A symbol>"}
//   kind: "full" | "sft" | "sofic"
//   forbidden: ["<A' word>", ...]                         sft only
//   graph: {"vertices": [...], "edges": [[from, to, label], ...]}  sofic only
//   window: optional vertex label length
// Unknown keys are errors. Errors throw ParseError naming the JSON path.
SpaceDefinition parse_space_definition(std::string_view text);
ZipShiftSpace parse_space(std::string_view text);
ZipShiftSpace load_space(const std::filesystem::path& path);
std::string space_to_json(const SpaceDefinition& def);

// Code spec (JSON): source, target (inline space objects or paths relative to
// the code file), window, psi_plus {"<A' word>": "<C' symbol>"},
// psi_minus {"<A symbol> ; <A' word>": "<C symbol>"}.
BlockCodeSpec parse_code(std::string_view text,
                         const std::filesystem::path& base_dir = std::filesystem::path("."));
BlockCodeSpec load_code(const std::filesystem::path& path);
std::string code_to_json(const BlockCodeSpec& spec);

}  // namespace zipshift
