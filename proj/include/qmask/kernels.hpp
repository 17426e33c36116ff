// Copyright 2026 The qmask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial reference kept for tests and the benchmark. Both
// versions perform the same floating-point operations per output element, so
// their results are bitwise identical.

#ifndef QMASK_KERNELS_HPP
#define QMASK_KERNELS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qmask/qcore.hpp"

namespace qmask::kernels {

enum class Exec { serial, parallel };

/// out(i, j) = sum_c rho(table[i * ncols + c], table[j * ncols + c]).
Mat partial_trace_serial(const Mat& rho, std::span<const std::size_t> table,
                         std::size_t nrows, std::size_t ncols);
Mat partial_trace_parallel(const Mat& rho, std::span<const std::size_t> table,
                           std::size_t nrows, std::size_t ncols);

/// Must be safe to call concurrently.
using Objective = std::function<double(std::span<const double>)>;

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> central_gradient_serial(const Objective& f, std::span<const double> x,
                                            double h);
std::vector<double> central_gradient_parallel(const Objective& f, std::span<const double> x,
                                              double h);
/// Five-point stencil, used only to cross-check the central gradient.
std::vector<double> five_point_gradient(const Objective& f, std::span<const double> x, double h);

/// Calls body(i) for i in [0, n). Iterations must be independent.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec);

}  // namespace qmask::kernels

#endif  // QMASK_KERNELS_HPP
