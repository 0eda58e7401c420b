#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ecci {

// Ground-truth binary image. Pixels are row-major from the top-left,
// 1 = transmissive, 0 = opaque. Immutable by convention after construction.
struct BinaryScene {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // size width*height, values in {0,1}

    int pixel_count() const { return width * height; }
};

// Disjoint square tiles covering the whole image; Q * K = P.
struct BlockPartition {
    int block_count = 0;
    std::vector<std::vector<int>> blocks;  // pixel indices, each of size K
};

// Deterministic built-in test scenes.
// Names: "glyph-GI", "checkerboard", "solid", "blank".
BinaryScene make_test_pattern(const std::string& name, int width, int height);

// Splits the scene into block_count axis-aligned square tiles in raster
// order; block_count = 1 yields the whole image as a single block.
BlockPartition partition(const BinaryScene& scene, int block_count);

// Real-valued image, used for analog baseline reconstructions.
struct AnalogImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

}  // namespace ecci
