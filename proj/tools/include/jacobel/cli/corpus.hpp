#pragma once

// The built-in curve corpus, embedded from corpus/*.json at configure time.

#include <span>
#include <string_view>
#include <vector>

#include "jacobel/cli/document.hpp"

namespace jacobel::cli {

struct CorpusEntry {
  std::string_view stem;  // file name without extension
  std::string_view text;
};

/// Sorted by file name.
std::span<const CorpusEntry> builtin_corpus();

/// Parses the entry whose stem matches; throws kMalformedDocument if absent.
CurveDocument corpus_document(std::string_view stem);

std::vector<CurveDocument> corpus_documents();

}  // namespace jacobel::cli
