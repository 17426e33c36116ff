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

#include "qmask/kernels.hpp"

#include <cstdint>

namespace qmask::kernels {

namespace {

inline cplx trace_entry(const Mat& rho, std::span<const std::size_t> table, std::size_t ncols,
                        std::size_t i, std::size_t j) {
  cplx acc = 0.0;
  const std::size_t* ri = table.data() + i * ncols;
  const std::size_t* rj = table.data() + j * ncols;
  for (std::size_t c = 0; c < ncols; ++c) {
    acc += rho(static_cast<Eigen::Index>(ri[c]), static_cast<Eigen::Index>(rj[c]));
  }
  return acc;
}

inline double central_component(const Objective& f, std::span<const double> x, double h,
                                std::size_t i) {
  std::vector<double> probe(x.begin(), x.end());
  probe[i] = x[i] + h;
  const double up = f(probe);
  probe[i] = x[i] - h;
  const double down = f(probe);
  return (up - down) / (2.0 * h);
}

}  // namespace

Mat partial_trace_serial(const Mat& rho, std::span<const std::size_t> table,
                         std::size_t nrows, std::size_t ncols) {
  Mat out(nrows, nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < nrows; ++j) {
      out(i, j) = trace_entry(rho, table, ncols, i, j);
    }
  }
  return out;
}

Mat partial_trace_parallel(const Mat& rho, std::span<const std::size_t> table,
                           std::size_t nrows, std::size_t ncols) {
  Mat out(nrows, nrows);
  const auto n = static_cast<std::int64_t>(nrows);
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      out(i, j) = trace_entry(rho, table, ncols, static_cast<std::size_t>(i),
                              static_cast<std::size_t>(j));
    }
  }
  return out;
}

std::vector<double> central_gradient_serial(const Objective& f, std::span<const double> x,
                                            double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = central_component(f, x, h, i);
  return g;
}

std::vector<double> central_gradient_parallel(const Objective& f, std::span<const double> x,
                                              double h) {
  std::vector<double> g(x.size());
  const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = central_component(f, x, h, static_cast<std::size_t>(i));
  }
  return g;
}

std::vector<double> five_point_gradient(const Objective& f, std::span<const double> x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto at = [&](double offset) {
      probe[i] = x[i] + offset;
      return f(probe);
    };
    g[i] = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12.0 * h);
    probe[i] = x[i];
  }
  return g;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace qmask::kernels
