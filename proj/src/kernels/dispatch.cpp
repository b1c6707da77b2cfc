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

#include "frabnoma/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "frabnoma/error.hpp"

namespace frabnoma::kernels
{

namespace
{
struct KernelTable
{
    Backend backend;
    void (*inner)(const double *, const double *, std::size_t, double *, double *) noexcept;
    double (*abs_sum)(const double *, std::size_t) noexcept;
};

constexpr KernelTable kScalarTable{Backend::Scalar, &scalar::hermitian_inner, &scalar::abs_sum};
constexpr KernelTable kAvx2Table{Backend::Avx2, &avx2::hermitian_inner, &avx2::abs_sum};

bool cpu_has_avx2() noexcept
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *select_default() noexcept
{
    const char *forced = std::getenv("FRABNOMA_KERNELS");
    if (forced != nullptr && std::string(forced) == "scalar")
        return &kScalarTable;
    return backend_available(Backend::Avx2) ? &kAvx2Table : &kScalarTable;
}

std::atomic<const KernelTable *> &table()
{
    static std::atomic<const KernelTable *> active{select_default()};
    return active;
}

inline const double *interleaved(std::span<const cdouble> v) noexcept
{
    return reinterpret_cast<const double *>(v.data());
}
} // namespace

std::string_view backend_name(Backend backend) noexcept
{
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend backend) noexcept
{
    if (backend == Backend::Scalar)
        return true;
    static const bool avx2 = avx2::compiled() && cpu_has_avx2();
    return avx2;
}

Backend active_backend() noexcept { return table().load()->backend; }

void set_backend(Backend backend)
{
    if (!backend_available(backend))
        throw InputError("kernel backend '" + std::string(backend_name(backend)) + "' is not available on this CPU");
    table().store(backend == Backend::Avx2 ? &kAvx2Table : &kScalarTable);
}

cdouble hermitian_inner(std::span<const cdouble> h, std::span<const cdouble> f)
{
    if (h.size() != f.size())
        throw InputError("hermitian_inner: dimension mismatch (" + std::to_string(h.size()) + " vs " +
                         std::to_string(f.size()) + ")");
    double re, im;
    table().load()->inner(interleaved(h), interleaved(f), h.size(), &re, &im);
    return {re, im};
}

double hermitian_gain(std::span<const cdouble> h, std::span<const cdouble> f)
{
    return std::norm(hermitian_inner(h, f));
}

void hermitian_gains(const ComplexMatrix &rows, std::span<const cdouble> f, std::span<double> out)
{
    if (rows.cols() != f.size() || rows.rows() != out.size())
        throw InputError("hermitian_gains: dimension mismatch");
    const KernelTable *t = table().load();
    const double *fp = interleaved(f);
    for (std::size_t r = 0; r < rows.rows(); ++r)
    {
        double re, im;
        t->inner(interleaved(rows.row(r)), fp, f.size(), &re, &im);
        out[r] = re * re + im * im;
    }
}

double abs_sum(std::span<const cdouble> h) noexcept
{
    return table().load()->abs_sum(interleaved(h), h.size());
}

} // namespace frabnoma::kernels
