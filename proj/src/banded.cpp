#include "mulchsim/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mulchsim::lin {

SymmetricBanded::SymmetricBanded(int n, int bandwidth)
    : n_(n), bw_(bandwidth), a_(static_cast<size_t>(bandwidth + 1) * n, 0.0) {
    if (n <= 0)
        throw std::invalid_argument("SymmetricBanded: n must be positive");
    if (bandwidth < 0)
        throw std::invalid_argument("SymmetricBanded: bandwidth must be nonnegative");
}

double SymmetricBanded::at(int i, int j) const {
    if (i < j)
        std::swap(i, j);
    const int d = i - j;
    if (d > bw_)
        return 0.0;
    return entry(d, j);
}

double& SymmetricBanded::ref(int i, int j) {
    const int d = i - j;
    if (d < 0 || d > bw_ || j < 0 || i >= n_)
        throw std::out_of_range("SymmetricBanded::ref outside lower band");
    return entry(d, j);
}

void SymmetricBanded::add(int i, int j, double v) {
    if (i < j)
        std::swap(i, j);
    ref(i, j) += v;
}

std::vector<double> SymmetricBanded::multiply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("SymmetricBanded::multiply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        y[j] += entry(0, j) * x[j];
        const int dmax = std::min(bw_, n_ - 1 - j);
        for (int d = 1; d <= dmax; ++d) {
            const double a = entry(d, j);
            y[j + d] += a * x[j];
            y[j] += a * x[j + d];
        }
    }
    return y;
}

SymmetricBanded SymmetricBanded::plus_scaled(const SymmetricBanded& other, double s) const {
    if (other.n_ != n_ || other.bw_ != bw_)
        throw std::invalid_argument("SymmetricBanded::plus_scaled: shape mismatch");
    SymmetricBanded out(n_, bw_);
    for (size_t idx = 0; idx < a_.size(); ++idx)
        out.a_[idx] = a_[idx] + s * other.a_[idx];
    return out;
}

SymmetricBanded SymmetricBanded::submatrix(int lo, int hi) const {
    if (lo < 0 || hi > n_ || hi <= lo)
        throw std::invalid_argument("SymmetricBanded::submatrix: bad range");
    SymmetricBanded out(hi - lo, bw_);
    for (int j = lo; j < hi; ++j) {
        const int dmax = std::min({bw_, n_ - 1 - j, hi - 1 - j});
        for (int d = 0; d <= dmax; ++d)
            out.ref(j - lo + d, j - lo) = entry(d, j);
    }
    return out;
}

BandedCholesky::BandedCholesky(const SymmetricBanded& a)
    : n_(a.size()), bw_(a.bandwidth()), l_(static_cast<size_t>(bw_ + 1) * n_, 0.0) {
    auto L = [this](int i, int j) -> double& {
        return l_[static_cast<size_t>(i - j) * n_ + j];
    };
    for (int j = 0; j < n_; ++j) {
        double s = a.at(j, j);
        for (int k = std::max(0, j - bw_); k < j; ++k)
            s -= L(j, k) * L(j, k);
        if (!(s > 0.0))
            throw std::domain_error("BandedCholesky: matrix not positive definite at row " +
                                    std::to_string(j));
        L(j, j) = std::sqrt(s);
        const int imax = std::min(j + bw_, n_ - 1);
        for (int i = j + 1; i <= imax; ++i) {
            double t = a.at(i, j);
            for (int k = std::max(0, i - bw_); k < j; ++k)
                t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
}

std::vector<double> BandedCholesky::solve(std::vector<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw std::invalid_argument("BandedCholesky::solve: size mismatch");
    // forward: L y = b
    for (int i = 0; i < n_; ++i) {
        double s = rhs[i];
        for (int k = std::max(0, i - bw_); k < i; ++k)
            s -= lentry(i - k, k) * rhs[k];
        rhs[i] = s / lentry(0, i);
    }
    // backward: L^T x = y
    for (int i = n_ - 1; i >= 0; --i) {
        double s = rhs[i];
        const int kmax = std::min(i + bw_, n_ - 1);
        for (int k = i + 1; k <= kmax; ++k)
            s -= lentry(k - i, i) * rhs[k];
        rhs[i] = s / lentry(0, i);
    }
    return rhs;
}

} // namespace mulchsim::lin
