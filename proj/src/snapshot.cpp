#include "nlse/snapshot.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlse {

namespace {

constexpr char kMagic[] = "NLSEFIELD";

void put_le(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char buf[8];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<char>(bits & 0xffu);
    bits >>= 8;
  }
  os.write(buf, 8);
}

double get_le(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) {
    throw std::runtime_error("snapshot truncated");
  }
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | buf[i];
  return std::bit_cast<double>(bits);
}

std::string value_after(const std::string& token, const char* key) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw std::runtime_error("snapshot header: expected '" + prefix + "', got '" + token + "'");
  }
  return token.substr(prefix.size());
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

void write_snapshot(std::ostream& os, const ComplexField& psi) {
  const GridSpec& g = psi.grid();
  os << kMagic << " d=" << g.dim() << " n=";
  for (int axis = 0; axis < g.dim(); ++axis) {
    if (axis > 0) os << ',';
    os << g.n(axis);
  }
  os << " h=" << format_double(g.h()) << '\n';
  for (const Complex& z : psi.values()) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
  if (!os) throw std::runtime_error("snapshot write failed");
}

ComplexField read_snapshot(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("snapshot: missing header");
  std::istringstream hs(header);
  std::string magic, dtok, ntok, htok, extra;
  hs >> magic >> dtok >> ntok >> htok;
  if (magic != kMagic || htok.empty() || (hs >> extra)) {
    throw std::runtime_error("snapshot: malformed header '" + header + "'");
  }
  const int dim = std::stoi(value_after(dtok, "d"));
  if (dim < 1 || dim > 3) throw std::runtime_error("snapshot: bad dimension");
  std::array<std::size_t, 3> n{1, 1, 1};
  std::istringstream ns(value_after(ntok, "n"));
  std::string part;
  int axis = 0;
  while (std::getline(ns, part, ',')) {
    if (axis >= dim) throw std::runtime_error("snapshot: too many extents");
    n[static_cast<std::size_t>(axis++)] = std::stoul(part);
  }
  if (axis != dim) throw std::runtime_error("snapshot: extent count does not match d");
  const std::string hval = value_after(htok, "h");
  double h = 0.0;
  auto [ptr, ec] = std::from_chars(hval.data(), hval.data() + hval.size(), h);
  if (ec != std::errc{} || ptr != hval.data() + hval.size()) {
    throw std::runtime_error("snapshot: bad spacing '" + hval + "'");
  }

  std::array<double, 3> lo{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    lo[static_cast<std::size_t>(a)] = -0.5 * static_cast<double>(n[static_cast<std::size_t>(a)] - 1) * h;
  }
  GridSpec grid(dim, n, lo, h);
  std::vector<Complex> values(grid.size());
  for (auto& z : values) {
    const double re = get_le(is);
    const double im = get_le(is);
    z = Complex(re, im);
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("snapshot: trailing bytes after field data");
  }
  return ComplexField(std::move(grid), std::move(values));
}

void write_snapshot_file(const std::string& path, const ComplexField& psi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_snapshot(os, psi);
}

ComplexField read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_snapshot(is);
}

}  // namespace nlse
