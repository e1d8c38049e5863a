// SPDX-License-Identifier: Apache-2.0
#include "simlearn/grid_operator.hpp"

#include <fftw3.h>

#include <mutex>
#include <optional>
#include <vector>

namespace simlearn {

namespace {

// FFTW planning is not thread safe; execution on new arrays is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p)
{
    return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

struct GridOperator::Convolution {
    int nx = 0, ny = 0, px = 0, py = 0;
    std::vector<cplx> left_hat;   // spectrum of f(d), used for A * x
    std::vector<cplx> right_hat;  // spectrum of f(-d), used for x * A
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;

    Convolution(int nx_, int ny_) : nx(nx_), ny(ny_), px(2 * nx_), py(2 * ny_)
    {
        std::vector<cplx> buf(static_cast<size_t>(px) * py);
        std::lock_guard<std::mutex> lock(planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        forward = fftw_plan_dft_2d(py, px, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_FORWARD, flags);
        inverse = fftw_plan_dft_2d(py, px, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_BACKWARD, flags);
    }

    ~Convolution()
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (inverse) fftw_destroy_plan(inverse);
    }

    Convolution(const Convolution&) = delete;
    Convolution& operator=(const Convolution&) = delete;

    size_t slot(int dx, int dy) const
    {
        const int x = dx < 0 ? dx + px : dx;
        const int y = dy < 0 ? dy + py : dy;
        return static_cast<size_t>(y) * px + x;
    }

    void convolve(const std::vector<cplx>& hat, const cplx* in, Eigen::Index in_stride, cplx* out,
                  Eigen::Index out_stride, std::vector<cplx>& buf) const
    {
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) buf[static_cast<size_t>(iy) * px + ix] = in[(iy * nx + ix) * in_stride];
        fftw_execute_dft(forward, as_fftw(buf.data()), as_fftw(buf.data()));
        for (size_t i = 0; i < buf.size(); ++i) buf[i] *= hat[i];
        fftw_execute_dft(inverse, as_fftw(buf.data()), as_fftw(buf.data()));
        const double scale = 1.0 / static_cast<double>(buf.size());
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                out[(iy * nx + ix) * out_stride] = buf[static_cast<size_t>(iy) * px + ix] * scale;
    }
};

namespace {

// Extracts the kernel f(dx, dy) of a BTTB matrix, or nothing when the
// matrix is not translation invariant on the grid.
std::optional<std::vector<cplx>> extract_kernel(const CMatrix& a, int nx, int ny, int px, int py)
{
    std::vector<cplx> k(static_cast<size_t>(px) * py, cplx(0.0, 0.0));
    auto slot = [&](int dx, int dy) {
        const int x = dx < 0 ? dx + px : dx;
        const int y = dy < 0 ? dy + py : dy;
        return static_cast<size_t>(y) * px + x;
    };
    for (int dy = -(ny - 1); dy <= ny - 1; ++dy)
        for (int dx = -(nx - 1); dx <= nx - 1; ++dx) {
            const int ix = std::max(dx, 0), jx = ix - dx;
            const int iy = std::max(dy, 0), jy = iy - dy;
            k[slot(dx, dy)] = a(iy * nx + ix, jy * nx + jx);
        }
    const double tol = 1e-12 * a.cwiseAbs().maxCoeff();
    for (int j = 0; j < nx * ny; ++j)
        for (int i = 0; i < nx * ny; ++i) {
            const int dx = i % nx - j % nx;
            const int dy = i / nx - j / nx;
            if (std::abs(a(i, j) - k[slot(dx, dy)]) > tol) return std::nullopt;
        }
    return k;
}

}  // namespace

GridOperator::GridOperator(CMatrix dense) : dense_(std::move(dense))
{
    if (dense_.rows() != dense_.cols()) throw RuntimeError("GridOperator: matrix must be square");
}

GridOperator::GridOperator(CMatrix dense, int nx, int ny) : GridOperator(std::move(dense))
{
    if (nx < 1 || ny < 1 || nx * ny != dense_.rows()) throw RuntimeError("GridOperator: grid does not match matrix");
    if (nx * ny < kFastThreshold) return;
    auto conv = std::make_shared<Convolution>(nx, ny);
    auto kernel = extract_kernel(dense_, nx, ny, conv->px, conv->py);
    if (!kernel) return;

    conv->left_hat = *kernel;
    conv->right_hat.assign(kernel->size(), cplx(0.0, 0.0));
    for (int dy = -(ny - 1); dy <= ny - 1; ++dy)
        for (int dx = -(nx - 1); dx <= nx - 1; ++dx) conv->right_hat[conv->slot(-dx, -dy)] = (*kernel)[conv->slot(dx, dy)];
    fftw_execute_dft(conv->forward, as_fftw(conv->left_hat.data()), as_fftw(conv->left_hat.data()));
    fftw_execute_dft(conv->forward, as_fftw(conv->right_hat.data()), as_fftw(conv->right_hat.data()));
    conv_ = std::move(conv);
}

CMatrix GridOperator::apply(const CMatrix& x) const
{
    if (x.rows() != dense_.cols()) throw RuntimeError("GridOperator::apply: dimension mismatch");
    if (!conv_) return dense_ * x;
    CMatrix y(x.rows(), x.cols());
    std::vector<cplx> buf(static_cast<size_t>(conv_->px) * conv_->py);
    for (Eigen::Index c = 0; c < x.cols(); ++c)
        conv_->convolve(conv_->left_hat, x.col(c).data(), 1, y.col(c).data(), 1, buf);
    return y;
}

CMatrix GridOperator::apply_right(const CMatrix& x) const
{
    if (x.cols() != dense_.rows()) throw RuntimeError("GridOperator::apply_right: dimension mismatch");
    if (!conv_) return x * dense_;
    CMatrix y(x.rows(), x.cols());
    std::vector<cplx> buf(static_cast<size_t>(conv_->px) * conv_->py);
    for (Eigen::Index r = 0; r < x.rows(); ++r)
        conv_->convolve(conv_->right_hat, x.data() + r, x.rows(), y.data() + r, y.rows(), buf);
    return y;
}

}  // namespace simlearn
