#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fimhe/gray_image.hpp"

namespace fimhe {

// Decode PGM (P2 ascii or P5 binary, maxval 255) or PNG (8-bit grayscale or
// 8-bit RGB) from memory. RGB is reduced to luma round(0.299R+0.587G+0.114B).
// Throws std::runtime_error with a distinct diagnostic per failure class:
// unrecognized format, malformed header, unsupported maxval/bit depth/color
// type, sample out of range, truncated data.
GrayImage load_image(std::span<const std::uint8_t> bytes);

GrayImage load_image_file(const std::string& path);

std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
std::vector<std::uint8_t> encode_png(const GrayImage& image);

// Write PGM P5, or PNG when the path ends in ".png".
void save_image_file(const GrayImage& image, const std::string& path);

}  // namespace fimhe
