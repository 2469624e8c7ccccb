#include "output.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <unistd.h>

namespace carpetlab::cli {

namespace fs = std::filesystem;

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("short write to " + tmp);
    }
  }
  fs::rename(tmp, path);
}

void emit(const CommandOutput& out, const std::string& dir) {
  if (dir.empty()) {
    std::cout << out.stdout_text;
    if (!out.stdout_text.empty() && out.stdout_text.back() != '\n') std::cout << '\n';
    return;
  }
  fs::create_directories(dir);
  for (const auto& [name, content] : out.files) write_atomic((fs::path(dir) / name).string(), content);
  std::cout << "wrote " << out.files.size() << " file(s) to " << dir << '\n';
}

}  // namespace carpetlab::cli
