#include "nsfr/tensor.hpp"

#include <stdexcept>
#include <vector>

namespace nsfr {

namespace {

// Applies A along axis 0 of an array with shape (s0, rest), then rotates the
// axes left so the next axis becomes axis 0.
Eigen::VectorXd apply_axis0_and_rotate(const Eigen::MatrixXd& a,
                                       const Eigen::VectorXd& x,
                                       long s0, long rest)
{
    const long m = a.rows();
    Eigen::Map<const Eigen::MatrixXd> xm(x.data(), s0, rest);
    Eigen::MatrixXd y = a * xm; // (m, rest)
    // Rotate: out[i_rest + rest*i_m] = y(i_m, i_rest)
    Eigen::VectorXd out(m * rest);
    Eigen::Map<Eigen::MatrixXd>(out.data(), rest, m) = y.transpose();
    return out;
}

} // namespace

Eigen::VectorXd tensor_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                             int dim)
{
    const long n = a.cols();
    const long m = a.rows();
    if (dim < 1 || dim > 3) throw std::invalid_argument("tensor_apply: dim 1..3");
    long expect = 1;
    for (int k = 0; k < dim; ++k) expect *= n;
    if (x.size() != expect)
        throw std::invalid_argument("tensor_apply: size mismatch");

    Eigen::VectorXd cur = x;
    for (int k = 0; k < dim; ++k) {
        // Axes already transformed have length m, the rest n.
        long rest = 1;
        for (int j = 1; j < dim; ++j) rest *= (j < dim - k) ? n : m;
        cur = apply_axis0_and_rotate(a, cur, n, rest);
    }
    return cur;
}

Eigen::MatrixXd tensor_apply_cols(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& x, int dim)
{
    Eigen::MatrixXd out;
    for (long c = 0; c < x.cols(); ++c) {
        Eigen::VectorXd col = tensor_apply(a, x.col(c), dim);
        if (c == 0) out.resize(col.size(), x.cols());
        out.col(c) = col;
    }
    return out;
}

Eigen::MatrixXd kron_fastest_first(const std::vector<Eigen::MatrixXd>& factors)
{
    Eigen::MatrixXd acc = Eigen::MatrixXd::Ones(1, 1);
    for (const auto& f : factors) {
        Eigen::MatrixXd next(acc.rows() * f.rows(), acc.cols() * f.cols());
        for (long j = 0; j < f.cols(); ++j)
            for (long i = 0; i < f.rows(); ++i)
                next.block(i * acc.rows(), j * acc.cols(), acc.rows(), acc.cols()) =
                    f(i, j) * acc;
        acc = next;
    }
    return acc;
}

} // namespace nsfr
