// SPDX-License-Identifier: Apache-2.0
//
// frab-noma: NOMA downlink simulation with finite-resolution analog beamforming
// Copyright (C) 2026 The frab-noma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRABNOMA_COMPLEX_MATRIX_HPP
#define FRABNOMA_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace frabnoma
{

using cdouble = std::complex<double>;
using ComplexVector = std::vector<cdouble>;

// Row-major dense complex matrix. Each row is one user's (or one beam's) M-dimensional vector;
// rows are contiguous so they can be handed to the inner-product kernels as spans.
class ComplexMatrix
{
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    void resize(std::size_t rows, std::size_t cols)
    {
        rows_ = rows;
        cols_ = cols;
        data_.assign(rows * cols, cdouble{});
    }

    std::span<cdouble> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const cdouble> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    cdouble &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cdouble &operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const cdouble> data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

} // namespace frabnoma

#endif
