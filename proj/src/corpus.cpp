#include "streamspec/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace streamspec {

std::vector<std::string> corpus_paths(std::string_view directory) {
  std::vector<std::string> out;
  std::string prefix = std::string(directory) + "/";
  for (const auto& e : detail::corpus_entries()) {
    std::string_view p = e.path;
    if (p.substr(0, prefix.size()) == prefix) out.emplace_back(p);
  }
  return out;
}

namespace {

const CorpusEntry* lookup(std::string_view path) {
  const CorpusEntry* found = nullptr;
  int matches = 0;
  for (const auto& e : detail::corpus_entries()) {
    std::string_view p = e.path;
    if (p == path) return &e;
    auto slash = p.rfind('/');
    if (slash != std::string_view::npos && p.substr(slash + 1) == path) {
      found = &e;
      ++matches;
    }
  }
  return matches == 1 ? found : nullptr;
}

}  // namespace

bool corpus_has(std::string_view path) { return lookup(path) != nullptr; }

std::string corpus_text(std::string_view path) {
  if (const CorpusEntry* e = lookup(path)) return e->text;
  throw std::out_of_range("no corpus asset named '" + std::string(path) + "'");
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (corpus_has(path)) return corpus_text(path);
  throw std::runtime_error("cannot read '" + path + "'");
}

}  // namespace streamspec
