#include "jacobel/cli/corpus.hpp"

#include <string>

#include "jacobel/error.hpp"

namespace jacobel::cli {

CurveDocument corpus_document(std::string_view stem) {
  for (const CorpusEntry& entry : builtin_corpus()) {
    if (entry.stem == stem) return parse_document(entry.text);
  }
  throw Error(ErrorCode::kMalformedDocument, "no corpus entry named '" + std::string(stem) + "'");
}

std::vector<CurveDocument> corpus_documents() {
  std::vector<CurveDocument> documents;
  for (const CorpusEntry& entry : builtin_corpus()) documents.push_back(parse_document(entry.text));
  return documents;
}

}  // namespace jacobel::cli
