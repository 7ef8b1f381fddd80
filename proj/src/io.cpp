#include "cgl/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace cgl::io {
namespace {

constexpr char kMagic[8] = {'C', 'G', 'L', 'F', 'L', 'D', '0', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
               char((v >> 24) & 0xff)};
  os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
         (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

}  // namespace

void write_field_csv(std::ostream& os, const Matrix& m) {
  os << "i,j,value\r\n";
  char buf[64];
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\r\n", i + 1, j + 1, m(i, j));
      os << buf;
    }
}

void write_field_binary(std::ostream& os, const Matrix& m) {
  static_assert(sizeof(double) == 8);
  os.write(kMagic, 8);
  put_u32(os, std::uint32_t(m.rows));
  put_u32(os, std::uint32_t(m.cols));
  // assumes little-endian host, as does the rest of the toolchain
  os.write(reinterpret_cast<const char*>(m.data.data()),
           std::streamsize(m.data.size() * 8));
}

Matrix read_field_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("bad field file magic");
  const std::uint32_t rows = get_u32(is), cols = get_u32(is);
  Matrix m(rows, cols);
  is.read(reinterpret_cast<char*>(m.data.data()), std::streamsize(m.data.size() * 8));
  if (!is) throw std::runtime_error("truncated field file");
  return m;
}

void write_level_set_csv(std::ostream& os, const std::vector<LevelSetPoint>& pts) {
  os << "theta,s,t,g\r\n";
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\r\n", p.theta, p.s,
                  p.t, p.g);
    os << buf;
  }
}

void write_level_set_svg(std::ostream& os, const std::vector<LevelSetPoint>& pts,
                         const std::optional<ConeReport>& cone) {
  double extent = 0.0;
  for (const auto& p : pts) extent = std::max(extent, std::max(p.s, p.t));
  if (extent <= 0) extent = 1.0;
  extent *= 1.1;
  constexpr double W = 1000.0, margin = 60.0;
  const double scale = (W - 2 * margin) / extent;
  auto X = [&](double s) { return margin + s * scale; };
  auto Y = [&](double t) { return W - margin - t * scale; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  // axes
  os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(extent)
     << "\" y2=\"" << Y(0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0)
     << "\" y2=\"" << Y(extent) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << X(extent) - 20 << "\" y=\"" << Y(0) + 30 << "\">s</text>\n";
  os << "<text x=\"" << X(0) - 30 << "\" y=\"" << Y(extent) + 10 << "\">t</text>\n";
  // cone rays s/t = c1, c2
  if (cone) {
    for (const double c : {cone->c1, cone->c2}) {
      if (!(c > 0) || !std::isfinite(c)) continue;
      double s = extent, t = extent / c;
      if (t > extent) {
        t = extent;
        s = extent * c;
      }
      os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(s)
         << "\" y2=\"" << Y(t)
         << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
      os << "<text x=\"" << X(s) + 4 << "\" y=\"" << Y(t)
         << "\" fill=\"gray\">s/t=" << c << "</text>\n";
    }
  }
  os << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"2\" points=\"";
  for (const auto& p : pts) os << X(p.s) << "," << Y(p.t) << " ";
  os << "\"/>\n</svg>\n";
}

}  // namespace cgl::io
