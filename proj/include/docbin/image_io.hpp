#pragma once

#include <string>

#include "docbin/image.hpp"

namespace docbin {

// Reads a PGM (P5) or PNG file, sniffing the format from the magic bytes.
// RGB(A) PNGs collapse to gray via luma Y = 0.299 R + 0.587 G + 0.114 B
// before the /255 normalization; gray inputs pass through untouched.
GrayImage load_gray(const std::string& path);

// Writes PNG when the extension is .png (case-insensitive), PGM otherwise.
// Samples are quantized with round(v * 255).
void save_gray(const std::string& path, const GrayImage& img);

// Binary masks travel as PGM with the two levels {0, 255}.
void save_binary(const std::string& path, const BinaryImage& img);

// Strict read-back of save_binary output: any level other than 0 or the
// maxval is a format error.
BinaryImage load_binary(const std::string& path);

// Lenient mask conversion for externally produced ground truths.
BinaryImage to_binary(const GrayImage& img, double threshold = 0.5);

}  // namespace docbin
