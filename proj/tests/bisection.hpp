// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared stability-boundary oracle: bisection on the largest real part of the
// eigenvalues of the printed drift matrix.

#ifndef OPTOSENSE_TESTS_BISECTION_HPP
#define OPTOSENSE_TESTS_BISECTION_HPP

#include <Eigen/Eigenvalues>
#include <optional>

#include "oracles.hpp"

namespace oracle {

inline double max_real_eigenvalue(const Point& p) {
  const Mat6 a = drift(p);
  Eigen::Matrix<double, 6, 6> m;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m(i, j) = static_cast<double>(a[i][j]);
  }
  Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(m, false);
  return es.eigenvalues().real().maxCoeff();
}

// Smallest xi_m >= 0 at which the system leaves the stable region, other
// parameters fixed. Empty if xi_m = 0 is already unstable or no crossing
// below `hi`.
inline std::optional<double> xi_m_boundary(Point p, double hi = 50.0) {
  p.xi_m = 0.0;
  if (max_real_eigenvalue(p) >= 0.0) return std::nullopt;
  p.xi_m = hi;
  if (max_real_eigenvalue(p) < 0.0) return std::nullopt;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    p.xi_m = 0.5 * (lo + hi);
    (max_real_eigenvalue(p) < 0.0 ? lo : hi) = p.xi_m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle

#endif  // OPTOSENSE_TESTS_BISECTION_HPP
