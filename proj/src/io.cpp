#include "hnls/io.hpp"

#include <charconv>
#include <exception>

#include "hnls/error.hpp"
#include "hnls/parallel.hpp"

namespace hnls {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<Complex> evaluate_grid(const Field& u, const Grid& grid, int threads) {
  if (grid.nx < 1 || grid.nt < 1) throw Error(ErrorKind::InvalidArgument, "grid needs nx, nt >= 1");
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.nt;
  std::vector<Complex> out(n);
  std::vector<std::exception_ptr> errors(n);
  parallel_for(n, threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / grid.nt), j = static_cast<int>(idx % grid.nt);
    try {
      out[idx] = u(grid.x(i), grid.t(j));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void write_csv(std::ostream& os, const Grid& grid, const std::vector<Complex>& values) {
  os << "x,t,re_u,im_u\n";
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nt; ++j) {
      const Complex v = values[static_cast<std::size_t>(i) * grid.nt + j];
      os << format_double(grid.x(i)) << ',' << format_double(grid.t(j)) << ',' << format_double(v.real()) << ','
         << format_double(v.imag()) << '\n';
    }
  }
}

}  // namespace hnls
