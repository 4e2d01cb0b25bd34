#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmod/quiver.hpp"
#include "qmod/representation.hpp"

namespace qmod::dsl {

// Text format:
//
//   quiver Name {
//     vertices: v0 v1 v2;
//     arrows: a0: v0 -> v1; a1: v1 -> v2; a2: v2 -> v0;
//     relations: a2 a1 a0;          # leftmost letter applied last
//     weights: a0(2, 1) a1(1, 1);   # (mu, nu); (1, 1) when omitted
//   }
//
// Identifiers are [A-Za-z_][A-Za-z0-9_]*; the section names and "quiver"
// are reserved. Comments run from '#' to end of line.

struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

struct QuiverDocument {
  std::string name;
  Quiver quiver;
  RelationSet relations;
  // Only the weights written in the source; see mu()/nu() for totals.
  std::map<ArrowId, std::pair<int, int>> weights;
  // "vertex:<id>", "arrow:<id>", "relation:<index>", "weight:<id>"
  std::map<std::string, SourceSpan> spans;

  bool has_weights() const { return !weights.empty(); }
  ArrowWeights mu() const;
  ArrowWeights nu() const;
};

struct ParseResult {
  std::optional<QuiverDocument> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value() && diagnostics.empty(); }
};

ParseResult parse(std::string_view text);

/// Canonical text: vertices, arrows, relations, weights, each sorted.
std::string print(const QuiverDocument& doc);

/// Canonical text for a bare quiver with relations.
std::string print(const Quiver& q, const RelationSet& r = {}, const std::string& name = "");

std::string format_word(const Word& w);
std::string format_diagnostic(const Diagnostic& d, std::string_view source_name);

}  // namespace qmod::dsl
