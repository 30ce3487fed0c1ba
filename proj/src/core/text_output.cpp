// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/text_output.hpp"

#include <zlib.h>

#include "dirpe/core/error.hpp"

namespace dirpe {

TextOutput::TextOutput(const std::string& path, bool gzip) : path_(path) {
  if (gzip) {
    gz_ = gzopen(path.c_str(), "wb9");
    if (gz_ == nullptr) throw InvalidArgument("cannot open '" + path + "' for writing");
  } else {
    plain_ = std::fopen(path.c_str(), "wb");
    if (plain_ == nullptr) throw InvalidArgument("cannot open '" + path + "' for writing");
  }
}

TextOutput::~TextOutput() {
  try {
    close();
  } catch (const Error&) {
  }
}

void TextOutput::write(std::string_view text) {
  if (text.empty()) return;
  if (gz_ != nullptr) {
    if (gzwrite(static_cast<gzFile>(gz_), text.data(), static_cast<unsigned>(text.size())) !=
        static_cast<int>(text.size())) {
      throw InvalidArgument("write to '" + path_ + "' failed");
    }
  } else if (plain_ != nullptr) {
    if (std::fwrite(text.data(), 1, text.size(), plain_) != text.size()) {
      throw InvalidArgument("write to '" + path_ + "' failed");
    }
  }
}

void TextOutput::close() {
  if (gz_ != nullptr) {
    const int rc = gzclose(static_cast<gzFile>(gz_));
    gz_ = nullptr;
    if (rc != Z_OK) throw InvalidArgument("closing '" + path_ + "' failed");
  }
  if (plain_ != nullptr) {
    const int rc = std::fclose(plain_);
    plain_ = nullptr;
    if (rc != 0) throw InvalidArgument("closing '" + path_ + "' failed");
  }
}

std::string read_text_file(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw InvalidArgument("cannot open '" + path + "'");
  std::string out;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  gzclose(f);
  if (got < 0) throw InvalidArgument("read of '" + path + "' failed");
  return out;
}

}  // namespace dirpe
