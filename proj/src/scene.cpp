#include "ecci/scene.hpp"

#include <array>
#include <cmath>
#include <string_view>

#include "ecci/errors.hpp"

namespace ecci {

namespace {

// 7-row glyph cells; '1' cells are transmissive strokes.
constexpr std::array<std::string_view, 7> kGlyphG = {
    "01110", "10001", "10000", "10011", "10001", "10001", "01110"};
constexpr std::array<std::string_view, 7> kGlyphI = {
    "111", "010", "010", "010", "010", "010", "111"};

void stamp(BinaryScene& s, const std::string_view* rows, int nrows, int ncols,
           int x0, int y0, int scale) {
    for (int r = 0; r < nrows; ++r) {
        for (int c = 0; c < ncols; ++c) {
            if (rows[r][static_cast<std::size_t>(c)] != '1') continue;
            for (int dy = 0; dy < scale; ++dy) {
                for (int dx = 0; dx < scale; ++dx) {
                    int x = x0 + c * scale + dx;
                    int y = y0 + r * scale + dy;
                    s.pixels[static_cast<std::size_t>(y) * s.width + x] = 1;
                }
            }
        }
    }
}

BinaryScene glyph_gi(int width, int height) {
    BinaryScene s{width, height,
                  std::vector<std::uint8_t>(std::size_t(width) * height, 0)};
    // Cell grid is 9 wide (G:5, gap:1, I:3) by 7 tall.
    int scale = std::min(width / 9, height / 7);
    if (scale < 1) scale = 1;
    const int total_w = 9 * scale;
    const int total_h = 7 * scale;
    const int x0 = (width - total_w) / 2;
    const int y0 = (height - total_h) / 2;
    stamp(s, kGlyphG.data(), 7, 5, x0, y0, scale);
    stamp(s, kGlyphI.data(), 7, 3, x0 + 6 * scale, y0, scale);
    return s;
}

}  // namespace

BinaryScene make_test_pattern(const std::string& name, int width, int height) {
    if (width < 1 || height < 1)
        throw ConfigError("test pattern needs positive dimensions, got " +
                          std::to_string(width) + "x" + std::to_string(height));
    if (name == "solid" || name == "blank") {
        std::uint8_t v = name == "solid" ? 1 : 0;
        return {width, height,
                std::vector<std::uint8_t>(std::size_t(width) * height, v)};
    }
    if (name == "checkerboard") {
        BinaryScene s{width, height,
                      std::vector<std::uint8_t>(std::size_t(width) * height)};
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                s.pixels[std::size_t(y) * width + x] =
                    static_cast<std::uint8_t>((x + y) & 1);
        return s;
    }
    if (name == "glyph-GI") {
        if (width < 8 || height < 8)
            throw ConfigError("glyph-GI needs width, height >= 8");
        return glyph_gi(width, height);
    }
    throw ConfigError("unknown test pattern name: " + name);
}

BlockPartition partition(const BinaryScene& scene, int block_count) {
    const int total = scene.pixel_count();
    if (block_count < 1)
        throw ConfigError("block count must be >= 1");
    if (block_count == 1) {
        BlockPartition p{1, {std::vector<int>(static_cast<std::size_t>(total))}};
        for (int j = 0; j < total; ++j) p.blocks[0][static_cast<std::size_t>(j)] = j;
        return p;
    }
    if (total % block_count != 0)
        throw ConfigError("block count " + std::to_string(block_count) +
                          " does not divide pixel count " + std::to_string(total));
    const int block_pixels = total / block_count;
    const int side = static_cast<int>(std::lround(std::sqrt(double(block_pixels))));
    if (side * side != block_pixels || scene.width % side != 0 ||
        scene.height % side != 0)
        throw ConfigError("block count " + std::to_string(block_count) +
                          " does not tile a " + std::to_string(scene.width) + "x" +
                          std::to_string(scene.height) + " image into squares");
    BlockPartition p;
    p.block_count = block_count;
    for (int by = 0; by < scene.height / side; ++by) {
        for (int bx = 0; bx < scene.width / side; ++bx) {
            std::vector<int> idx;
            idx.reserve(static_cast<std::size_t>(block_pixels));
            for (int dy = 0; dy < side; ++dy)
                for (int dx = 0; dx < side; ++dx)
                    idx.push_back((by * side + dy) * scene.width + bx * side + dx);
            p.blocks.push_back(std::move(idx));
        }
    }
    return p;
}

}  // namespace ecci
