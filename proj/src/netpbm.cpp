#include "ecci/netpbm.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "ecci/errors.hpp"

namespace ecci {

namespace {

// Tokenizer over a plain netpbm payload; tracks the byte offset for
// error reporting and skips '#' comments.
class Tokens {
  public:
    explicit Tokens(const std::string& s) : s_(s) {}

    std::string next(const char* what) {
        skip();
        if (pos_ >= s_.size())
            throw ParseError(std::string("unexpected end of payload while reading ") +
                             what + " at byte " + std::to_string(pos_));
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    long next_int(const char* what) {
        std::size_t at = offset_of_next();
        std::string tok = next(what);
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("bad ") + what + " token '" + tok +
                             "' at byte " + std::to_string(at));
        }
    }

    std::size_t offset_of_next() {
        skip();
        return pos_;
    }

    bool exhausted() {
        skip();
        return pos_ >= s_.size();
    }

  private:
    void skip() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

void check_dims(long w, long h, std::size_t header_at) {
    if (w < 1 || h < 1 || w > 1 << 20 || h > 1 << 20)
        throw ParseError("implausible image dimensions at byte " +
                         std::to_string(header_at));
}

}  // namespace

std::string write_pbm(const BinaryScene& scene) {
    std::ostringstream out;
    out << "P1\n" << scene.width << " " << scene.height << "\n";
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            if (x) out << ' ';
            out << int(scene.pixels[std::size_t(y) * scene.width + x]);
        }
        out << '\n';
    }
    return out.str();
}

BinaryScene read_pbm(const std::string& payload) {
    Tokens t(payload);
    std::size_t at = t.offset_of_next();
    if (t.next("magic") != "P1")
        throw ParseError("expected P1 magic at byte " + std::to_string(at));
    std::size_t dims_at = t.offset_of_next();
    long w = t.next_int("width");
    long h = t.next_int("height");
    check_dims(w, h, dims_at);
    BinaryScene s{int(w), int(h), {}};
    s.pixels.reserve(std::size_t(w) * std::size_t(h));
    for (long i = 0; i < w * h; ++i) {
        std::size_t tok_at = t.offset_of_next();
        long v = t.next_int("pixel");
        if (v != 0 && v != 1)
            throw ParseError("non-binary pixel value " + std::to_string(v) +
                             " at byte " + std::to_string(tok_at));
        s.pixels.push_back(static_cast<std::uint8_t>(v));
    }
    if (!t.exhausted())
        throw ParseError("trailing data after " + std::to_string(w * h) +
                         " pixels at byte " + std::to_string(t.offset_of_next()));
    return s;
}

std::string write_pgm(const AnalogImage& img) {
    std::ostringstream out;
    out << "P2\n" << img.width << " " << img.height << "\n255\n";
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double v = img.values[std::size_t(y) * img.width + x];
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            // round half up
            int g = static_cast<int>(std::floor(v * 255.0 + 0.5));
            if (x) out << ' ';
            out << g;
        }
        out << '\n';
    }
    return out.str();
}

AnalogImage read_pgm(const std::string& payload) {
    Tokens t(payload);
    std::size_t at = t.offset_of_next();
    if (t.next("magic") != "P2")
        throw ParseError("expected P2 magic at byte " + std::to_string(at));
    std::size_t dims_at = t.offset_of_next();
    long w = t.next_int("width");
    long h = t.next_int("height");
    check_dims(w, h, dims_at);
    std::size_t maxval_at = t.offset_of_next();
    long maxval = t.next_int("maxval");
    if (maxval < 1 || maxval > 65535)
        throw ParseError("bad maxval at byte " + std::to_string(maxval_at));
    AnalogImage img{int(w), int(h), {}};
    img.values.reserve(std::size_t(w) * std::size_t(h));
    for (long i = 0; i < w * h; ++i) {
        std::size_t tok_at = t.offset_of_next();
        long v = t.next_int("pixel");
        if (v < 0 || v > maxval)
            throw ParseError("pixel value out of range at byte " +
                             std::to_string(tok_at));
        img.values.push_back(double(v) / double(maxval));
    }
    if (!t.exhausted())
        throw ParseError("trailing data after " + std::to_string(w * h) +
                         " pixels at byte " + std::to_string(t.offset_of_next()));
    return img;
}

}  // namespace ecci
