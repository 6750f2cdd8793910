#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "homprod/chain.hpp"
#include "homprod/gf2.hpp"

namespace homprod {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// .pcm: "ROWS COLS" then ROWS lines of COLS characters from {0,1}.
BinMatrix read_pcm(std::istream& in);
BinMatrix read_pcm(const std::filesystem::path& path);
void write_pcm(std::ostream& out, const BinMatrix& m);
void write_pcm(const std::filesystem::path& path, const BinMatrix& m);

// Directory holding manifest.txt ("LEVELS lo hi QUBIT_LEVEL 0") and delta_<j>.pcm per map.
ChainComplex read_complex(const std::filesystem::path& dir);
void write_complex(const std::filesystem::path& dir, const ChainComplex& c);

}  // namespace homprod
