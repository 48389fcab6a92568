#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace streamspec {

struct CorpusEntry {
  const char* path;  // relative to assets/, e.g. "specs/zip_alt.spec"
  const char* text;
};

namespace detail {
const std::vector<CorpusEntry>& corpus_entries();
}

std::vector<std::string> corpus_paths(std::string_view directory);
// Throws std::out_of_range when absent. Accepts "zip_alt.spec" as shorthand
// for "specs/zip_alt.spec" when the name is unambiguous.
std::string corpus_text(std::string_view path);
bool corpus_has(std::string_view path);

// Reads path from disk if it exists, otherwise from the embedded corpus.
std::string load_text(const std::string& path);

}  // namespace streamspec
