#include "homprod/io.hpp"

#include <fstream>
#include <sstream>

namespace homprod {

namespace fs = std::filesystem;

BinMatrix read_pcm(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("pcm: missing header line");
  std::istringstream hs(header);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(hs >> rows >> cols) || (hs >> extra) || rows < 0 || cols < 0)
    throw FormatError("pcm: header must be \"ROWS COLS\"");
  if (header.find_first_not_of("0123456789 ") != std::string::npos)
    throw FormatError("pcm: header must be \"ROWS COLS\"");
  BinMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long r = 0; r < rows; ++r) {
    std::string line;
    if (!std::getline(in, line))
      throw FormatError("pcm: expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
    if (line.size() != static_cast<std::size_t>(cols))
      throw FormatError("pcm: row " + std::to_string(r + 1) + " has length " +
                        std::to_string(line.size()) + ", expected " + std::to_string(cols));
    for (long long c = 0; c < cols; ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch != '0' && ch != '1')
        throw FormatError("pcm: row " + std::to_string(r + 1) + " contains '" + std::string(1, ch) + "'");
      if (ch == '1') m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  std::string rest;
  while (std::getline(in, rest))
    if (!rest.empty()) throw FormatError("pcm: trailing content after matrix rows");
  return m;
}

BinMatrix read_pcm(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_pcm(in);
}

void write_pcm(std::ostream& out, const BinMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) out << m.row(r).to_string() << '\n';
}

void write_pcm(const fs::path& path, const BinMatrix& m) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  write_pcm(out, m);
}

namespace {

fs::path map_file(const fs::path& dir, int j) { return dir / ("delta_" + std::to_string(j) + ".pcm"); }

}  // namespace

ChainComplex read_complex(const fs::path& dir) {
  std::ifstream in(dir / "manifest.txt");
  if (!in) throw FormatError("cannot open " + (dir / "manifest.txt").string());
  std::string line;
  std::getline(in, line);
  std::istringstream ls(line);
  std::string levels_kw, qubit_kw, extra;
  int lo = 0, hi = 0, qubit = 0;
  if (!(ls >> levels_kw >> lo >> hi >> qubit_kw >> qubit) || levels_kw != "LEVELS" ||
      qubit_kw != "QUBIT_LEVEL" || (ls >> extra))
    throw FormatError("manifest must read \"LEVELS lo hi QUBIT_LEVEL 0\"");
  if (qubit != 0) throw FormatError("manifest: only QUBIT_LEVEL 0 is supported");
  if (hi < lo) throw FormatError("manifest: hi < lo");
  if (hi == lo) {
    // a single level with no maps; its size is stored as an empty-row matrix
    BinMatrix m = read_pcm(map_file(dir, lo));
    return ChainComplex::single_level(lo, m.cols());
  }
  std::vector<BinMatrix> maps;
  for (int j = lo; j < hi; ++j) maps.push_back(read_pcm(map_file(dir, j)));
  return ChainComplex(lo, std::move(maps));
}

void write_complex(const fs::path& dir, const ChainComplex& c) {
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.txt");
  if (!out) throw FormatError("cannot write " + (dir / "manifest.txt").string());
  out << "LEVELS " << c.min_level() << ' ' << c.max_level() << " QUBIT_LEVEL 0\n";
  if (c.length() == 0) {
    write_pcm(map_file(dir, c.min_level()), BinMatrix(0, c.size(c.min_level())));
    return;
  }
  for (int j = c.min_level(); j < c.max_level(); ++j) write_pcm(map_file(dir, j), c.map(j));
}

}  // namespace homprod
