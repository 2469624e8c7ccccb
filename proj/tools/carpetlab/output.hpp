#pragma once

#include <string>
#include <utility>
#include <vector>

namespace carpetlab::cli {

/// Files a command wants to emit plus its stdout text. Nothing is written
/// until the command has finished successfully.
struct CommandOutput {
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
  std::string stdout_text;
  int exit_code = 0;
};

/// Writes every file into dir via temp file + rename; prints stdout_text when
/// dir is empty.
void emit(const CommandOutput& out, const std::string& dir);

void write_atomic(const std::string& path, const std::string& content);

}  // namespace carpetlab::cli
