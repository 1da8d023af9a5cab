// Copyright 2026 The Skyforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <cstdio>
#include <memory>
#include <string>

#include "skyforge/error.hpp"

namespace skyforge::internal {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr OpenOrFail(const std::filesystem::path& path, const char* mode) {
  FilePtr file(std::fopen(path.c_str(), mode));
  if (!file) {
    Fail(*mode == 'r' ? ErrorCode::kMissingFile : ErrorCode::kInvalidArgument,
         "cannot open " + path.string());
  }
  return file;
}

// Decoded rows live on the heap so a longjmp out of libpng never leaves a
// half-updated local behind.
struct Decoded {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bytes_per_sample = 1;
  std::vector<png_byte> bytes;
};

enum class Target { kRgb8, kGray };

bool Decode(std::FILE* file, Target target, Decoded* out) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  std::vector<png_bytep>* rows = new std::vector<png_bytep>();
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    delete rows;
    return false;
  }
  png_init_io(png, file);
  png_read_info(png, info);
  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (target == Target::kRgb8) {
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY ||
        color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
      png_set_gray_to_rgb(png);
    }
    if (bit_depth < 8) png_set_packing(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    out->channels = 3;
    out->bytes_per_sample = 1;
  } else {
    if (color_type != PNG_COLOR_TYPE_GRAY) {
      png_destroy_read_struct(&png, &info, nullptr);
      delete rows;
      return false;
    }
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (bit_depth == 16) png_set_swap(png);
    out->channels = 1;
    out->bytes_per_sample = bit_depth == 16 ? 2 : 1;
  }
  png_read_update_info(png, info);
  out->width = static_cast<int>(png_get_image_width(png, info));
  out->height = static_cast<int>(png_get_image_height(png, info));
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  if (rowbytes != static_cast<std::size_t>(out->width) * out->channels *
                      out->bytes_per_sample) {
    png_destroy_read_struct(&png, &info, nullptr);
    delete rows;
    return false;
  }
  out->bytes.resize(rowbytes * out->height);
  rows->resize(out->height);
  for (int y = 0; y < out->height; ++y) {
    (*rows)[y] = out->bytes.data() + rowbytes * y;
  }
  png_read_image(png, rows->data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  delete rows;
  return true;
}

bool Encode(std::FILE* file, int width, int height, int color_type,
            int bit_depth, const std::vector<png_bytep>* rows) {
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, width, height, bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);
  png_write_image(png, const_cast<png_bytepp>(rows->data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

RgbImage ReadRgbPng(const std::filesystem::path& path) {
  FilePtr file = OpenOrFail(path, "rb");
  auto decoded = std::make_unique<Decoded>();
  if (!Decode(file.get(), Target::kRgb8, decoded.get())) {
    Fail(ErrorCode::kMalformedFile, "unreadable PNG " + path.string());
  }
  RgbImage image;
  image.width = decoded->width;
  image.height = decoded->height;
  image.data.assign(decoded->bytes.begin(), decoded->bytes.end());
  return image;
}

void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image) {
  FilePtr file = OpenOrFail(path, "wb");
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.data.data()) +
              static_cast<std::size_t>(y) * image.width * 3;
  }
  if (!Encode(file.get(), image.width, image.height, PNG_COLOR_TYPE_RGB, 8,
              &rows)) {
    Fail(ErrorCode::kMalformedFile, "failed to write " + path.string());
  }
}

SemanticMask ReadMaskPng(const std::filesystem::path& path) {
  FilePtr file = OpenOrFail(path, "rb");
  auto decoded = std::make_unique<Decoded>();
  if (!Decode(file.get(), Target::kGray, decoded.get())) {
    Fail(ErrorCode::kMalformedFile,
         "mask must be a single-channel PNG: " + path.string());
  }
  SemanticMask mask(decoded->width, decoded->height);
  const std::size_t n = mask.class_ids.size();
  if (decoded->bytes_per_sample == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint16_t v;
      std::memcpy(&v, decoded->bytes.data() + 2 * i, 2);
      mask.class_ids[i] = v;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) mask.class_ids[i] = decoded->bytes[i];
  }
  return mask;
}

void WriteMaskPng(const std::filesystem::path& path, const SemanticMask& mask) {
  FilePtr file = OpenOrFail(path, "wb");
  std::vector<png_bytep> rows(mask.height);
  for (int y = 0; y < mask.height; ++y) {
    rows[y] = reinterpret_cast<png_bytep>(const_cast<ClassId*>(
        mask.class_ids.data() + static_cast<std::size_t>(y) * mask.width));
  }
  if (!Encode(file.get(), mask.width, mask.height, PNG_COLOR_TYPE_GRAY, 16,
              &rows)) {
    Fail(ErrorCode::kMalformedFile, "failed to write " + path.string());
  }
}

}  // namespace skyforge::internal
