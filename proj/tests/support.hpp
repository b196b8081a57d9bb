#pragma once

#include <fstream>
#include <sstream>
#include <string>

#ifndef GFGCBV_SOURCE_DIR
#define GFGCBV_SOURCE_DIR "."
#endif

inline std::string source_path(const std::string& rel) { return std::string(GFGCBV_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string& rel) {
  std::ifstream f(source_path(rel));
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}
