#pragma once

#include <string>

#include "ecci/scene.hpp"

namespace ecci {

// Plain-text netpbm I/O. PBM (P1) carries binary scenes, PGM (P2, maxval
// 255) carries analog reconstructions. Parse failures throw ParseError
// with the byte offset of the offending token.

std::string write_pbm(const BinaryScene& scene);
BinaryScene read_pbm(const std::string& payload);

std::string write_pgm(const AnalogImage& img);  // values expected in [0,1]
AnalogImage read_pgm(const std::string& payload);

}  // namespace ecci
