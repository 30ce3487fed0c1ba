// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>
#include <string_view>

namespace dirpe {

/// Write-only text file, optionally gzip-compressed.
class TextOutput {
 public:
  /// Throws InvalidArgument when the file cannot be opened.
  TextOutput(const std::string& path, bool gzip);
  ~TextOutput();
  TextOutput(const TextOutput&) = delete;
  TextOutput& operator=(const TextOutput&) = delete;

  void write(std::string_view text);
  /// Flushes and closes; throws on write errors. Called by the destructor
  /// if needed, which swallows errors.
  void close();

 private:
  std::string path_;
  std::FILE* plain_ = nullptr;
  void* gz_ = nullptr;
};

/// Reads a whole file, transparently inflating gzip content.
std::string read_text_file(const std::string& path);

}  // namespace dirpe
