#ifndef MULCHSIM_BANDED_HPP
#define MULCHSIM_BANDED_HPP

#include <vector>

namespace mulchsim::lin {

// Symmetric banded matrix in lower band storage: entry (j+d, j) with
// d in [0, bandwidth] lives at band(d)[j]. Everything outside the band
// is an exact zero.
class SymmetricBanded {
public:
    SymmetricBanded(int n, int bandwidth);

    int size() const { return n_; }
    int bandwidth() const { return bw_; }

    // Value of A(i, j); zero outside the band.
    double at(int i, int j) const;
    // Mutable lower-triangle entry, requires 0 <= i - j <= bandwidth.
    double& ref(int i, int j);
    // A(i, j) += v, symmetry maintained implicitly.
    void add(int i, int j, double v);

    std::vector<double> multiply(const std::vector<double>& x) const;

    // this + s * other (same dimensions and bandwidth).
    SymmetricBanded plus_scaled(const SymmetricBanded& other, double s) const;

    // Principal submatrix rows/cols [lo, hi).
    SymmetricBanded submatrix(int lo, int hi) const;

private:
    int n_;
    int bw_;
    std::vector<double> a_; // (bw_+1) stripes of length n_
    double& entry(int d, int j) { return a_[static_cast<size_t>(d) * n_ + j]; }
    double entry(int d, int j) const { return a_[static_cast<size_t>(d) * n_ + j]; }
};

// Cholesky factorization (L L^T) of a symmetric positive definite banded
// matrix. Construction throws std::domain_error when a pivot is not
// positive, which doubles as the positive-definiteness witness.
class BandedCholesky {
public:
    explicit BandedCholesky(const SymmetricBanded& a);

    std::vector<double> solve(std::vector<double> rhs) const;

private:
    int n_;
    int bw_;
    std::vector<double> l_; // same band layout as SymmetricBanded
    double lentry(int d, int j) const { return l_[static_cast<size_t>(d) * n_ + j]; }
};

} // namespace mulchsim::lin

#endif
