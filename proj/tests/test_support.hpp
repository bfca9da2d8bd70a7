#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string corpus_path(const std::string& name) {
  const char* root = std::getenv("SOLQUO_CORPUS");
  return std::string(root ? root : "corpus") + "/" + name;
}

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name));
  if (!in) throw std::runtime_error("cannot open corpus file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
