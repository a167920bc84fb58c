#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subbundle/bundle.hpp"

namespace subbundle {

/// `kernel_check` block: images of the family variables in a target ring whose
/// variables are collected from the images in order of first appearance.
struct KernelCheckBlock {
  ContextPtr target;
  std::vector<std::pair<std::string, Polynomial>> maps;
  std::vector<Polynomial> claimed;

  friend bool operator==(const KernelCheckBlock& a, const KernelCheckBlock& b);
};

struct FamilyFile {
  FamilySpec spec;
  std::optional<KernelCheckBlock> kernel_check;
  std::optional<Polynomial> closure_by;

  friend bool operator==(const FamilyFile&, const FamilyFile&) = default;
};

/// Line-oriented family description; `#` starts a comment.
///
///   field Q | field Fp <p>
///   base_vars <names...>
///   fiber_vars <names...>
///   base_ideal <poly> ; <poly> ; ...
///   family <poly> ; <poly> ; ...
///   rank <d>
///   point <c1> <c2> ...                      (repeatable)
///   param <t> : <p_1(t)>, ..., <p_m(t)>     (repeatable)
///   sample <t> = <v1>, <v2>, ...
///   kernel_check
///   map <var> -> <poly>                      (inside kernel_check)
///   claimed <poly> ; <poly> ; ...            (inside kernel_check)
///   closure by <poly>
///
/// Syntax errors raise ParseError with line and column; semantic problems
/// (points off the base, reserved `_` names) raise ValidationError.
FamilyFile parse_family_file(std::string_view text, const GroebnerLimits& limits = {});

/// Canonical text that parses back to an equal FamilyFile.
std::string render_family_file(const FamilyFile& file);

/// Reads and parses a file; unreadable files raise ValidationError.
FamilyFile load_family_file(const std::filesystem::path& path, const GroebnerLimits& limits = {});

}  // namespace subbundle
