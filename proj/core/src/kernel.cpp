#include "radiant/kernel.hpp"

#include <cmath>
#include <cstdint>

#include "radiant/errors.hpp"
#include "radiant/io.hpp"
#include "radiant/parallel.hpp"

namespace radiant {

cdouble eval_kernel(double distance, const PhysicalParams& params) {
  if (!(distance > 0.0)) {
    throw DomainError("kernel evaluated at zero separation; use the diagonal convention");
  }
  const double kr = params.k0 * distance;
  return std::exp(cdouble(-params.mu * distance, kr)) / cdouble(0.0, kr);
}

cdouble eval_kernel(const Vec3& separation, const PhysicalParams& params) {
  return eval_kernel(separation.norm(), params);
}

CouplingMatrix assemble_matrix(const Sample& sample,
                               const PhysicalParams& params) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(sample.size());
  if (n == 0) throw InvalidArgument("cannot assemble a matrix for an empty sample");

  Eigen::MatrixXcd m(n, n);
  const auto positions = sample.positions();
  parallel_for(sample.size(), [&](std::size_t begin, std::size_t end) {
    for (auto a = static_cast<Eigen::Index>(begin); a < static_cast<Eigen::Index>(end); ++a) {
      m(a, a) = kDiagonalValue;
      for (Eigen::Index b = 0; b < a; ++b) {
        const double r = (positions[a] - positions[b]).norm();
        if (!(r > 0.0)) {
          throw DomainError("atoms " + std::to_string(b) + " and " + std::to_string(a) +
                            " coincide");
        }
        const cdouble k = eval_kernel(r, params);
        m(a, b) = k;
        m(b, a) = k;
      }
    }
  });
  return CouplingMatrix(std::move(m), params);
}

void write_matrix_binary(const CouplingMatrix& m,
                         const std::filesystem::path& path) {
  auto out = io::open_output(path, std::ios::out | std::ios::binary);
  const std::uint64_t n = m.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b < m.size(); ++b) {
      const double pair[2] = {m(a, b).real(), m(a, b).imag()};
      out.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_matrix_csv(const CouplingMatrix& m,
                      const std::filesystem::path& path) {
  auto out = io::open_output(path);
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (b > 0) out << ',';
      out << io::format_double(m(a, b).real()) << ',' << io::format_double(m(a, b).imag());
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace radiant
