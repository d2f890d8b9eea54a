#include "aqc/identities.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqc/error.hpp"

namespace aqc {

namespace {

using Long = long double;
using Quad = boost::multiprecision::cpp_bin_float_quad;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
std::vector<T> log_factorials(int N) {
  using std::log;
  std::vector<T> lf(N + 1, T(0));
  for (int i = 1; i <= N; ++i) lf[i] = lf[i - 1] + log(T(i));
  return lf;
}

// First `rows` rows of exp(c a^k) on N levels: <i|.|i+kp> = c^p/p! sqrt((i+kp)!/i!)
template <class T>
Mat<T> lowering_rows(int N, int rows, T c, int k, const std::vector<T>& lf) {
  using std::abs, std::exp, std::log;
  Mat<T> out = Mat<T>::Zero(rows, N);
  for (int i = 0; i < rows; ++i) {
    out(i, i) = 1;
    if (c == 0) continue;
    const T lc = log(abs(c));
    for (int p = 1; i + k * p < N; ++p) {
      int j = i + k * p;
      T lg = T(p) * lc - lf[p] + (lf[j] - lf[i]) / 2;
      out(i, j) = (c < 0 && p % 2 == 1) ? T(-exp(lg)) : T(exp(lg));
    }
  }
  return out;
}

// First `cols` columns of exp(c a^dag^k)
template <class T>
Mat<T> raising_cols(int N, int cols, T c, int k, const std::vector<T>& lf) {
  return lowering_rows<T>(N, cols, c, k, lf).transpose();
}

template <class T>
Mat<T> number_exp(int n, T c) {
  using std::exp;
  Mat<T> out = Mat<T>::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = exp(c * i);
  return out;
}

template <class T>
void record(IdentityReport& rep, int idx, const Mat<T>& L, const Mat<T>& R) {
  using std::max;
  T diff = (L - R).cwiseAbs().maxCoeff();
  T scale = max(T(1), T(R.cwiseAbs().maxCoeff()));
  rep.absolute[idx] = static_cast<double>(diff);
  rep.residual[idx] = static_cast<double>(T(diff / scale));
}

// Identities whose factors are nilpotent shifts; the block entries are finite
// sums that cancel heavily when mn < 0, hence quad precision.
void shift_identities(IdentityReport& rep, int N, int K, Quad m, Quad n) {
  using std::exp, std::log, std::sqrt;
  using T = Quad;
  const auto lf = log_factorials<T>(N);
  auto block = [&](const Mat<T>& a) { return Mat<T>(a.topLeftCorner(K, K)); };

  // 1: e^{m n} e^{n a^dag} e^{-m n} = e^{n e^m a^dag}
  {
    Mat<T> L = number_exp<T>(K, m) * block(raising_cols<T>(N, K, n, 1, lf)) * number_exp<T>(K, -m);
    Mat<T> R = block(raising_cols<T>(N, K, T(n * exp(m)), 1, lf));
    record(rep, 0, L, R);
  }
  // 2: e^{m a} e^{n a^dag} = e^{mn} e^{n a^dag} e^{m a}
  {
    Mat<T> L = lowering_rows<T>(N, K, m, 1, lf) * raising_cols<T>(N, K, n, 1, lf);
    Mat<T> R = T(exp(m * n)) * block(raising_cols<T>(N, K, n, 1, lf)) * block(lowering_rows<T>(N, K, m, 1, lf));
    record(rep, 1, L, R);
  }
  // 3: e^{m a^2} e^{n a^dag} = e^{m n^2} e^{n a^dag} e^{m a^2} e^{2mn a}
  {
    Mat<T> L = lowering_rows<T>(N, K, m, 2, lf) * raising_cols<T>(N, K, n, 1, lf);
    Mat<T> R = T(exp(m * n * n)) * block(raising_cols<T>(N, K, n, 1, lf)) * block(lowering_rows<T>(N, K, m, 2, lf)) *
               block(lowering_rows<T>(N, K, T(2 * m * n), 1, lf));
    record(rep, 2, L, R);
  }
  // 6: e^{m a^2} e^{n a^dag^2} = (1-4mn)^{-1/2} e^{n/(1-4mn) a^dag^2} e^{-ln(1-4mn) n} e^{m/(1-4mn) a^2}
  {
    T d = 1 - 4 * m * n;
    Mat<T> L = lowering_rows<T>(N, K, m, 2, lf) * raising_cols<T>(N, K, n, 2, lf);
    Mat<T> R = T(1 / sqrt(d)) * block(raising_cols<T>(N, K, T(n / d), 2, lf)) * number_exp<T>(K, T(-log(d))) *
               block(lowering_rows<T>(N, K, T(m / d), 2, lf));
    record(rep, 5, L, R);
  }
}

// 4 and 5: disentangling e^{(m a^2 + n a^dag^2)/2}, w = sqrt(mn) continued to mn < 0.
// The left side is a genuine matrix exponential on the padded space.
void squeeze_identities(IdentityReport& rep, int N, int K, Long m, Long n) {
  using T = Long;
  const auto lf = log_factorials<T>(N);
  auto block = [&](const Mat<T>& a) { return Mat<T>(a.topLeftCorner(K, K)); };

  Mat<T> gen = Mat<T>::Zero(N, N);
  for (int i = 0; i + 2 < N; ++i) {
    T c = std::sqrt(T(i + 1) * T(i + 2));
    gen(i, i + 2) = 0.5L * m * c;
    gen(i + 2, i) = 0.5L * n * c;
  }
  Mat<T> L = block(Mat<T>(gen.exp()));

  T mn = m * n, cosw, tan_over_w;
  if (mn >= 0) {
    T w = std::sqrt(mn);
    cosw = std::cos(w);
    tan_over_w = w == 0 ? 1 : std::tan(w) / w;
  } else {
    T u = std::sqrt(-mn);
    cosw = std::cosh(u);
    tan_over_w = std::tanh(u) / u;
  }
  const T lc = std::log(cosw);
  Mat<T> R4 = (1 / std::sqrt(cosw)) * block(raising_cols<T>(N, K, 0.5L * n * tan_over_w, 2, lf)) *
              number_exp<T>(K, -lc) * block(lowering_rows<T>(N, K, 0.5L * m * tan_over_w, 2, lf));
  record(rep, 3, L, R4);
  // the a^2 factor now stands left, so its rows reach into the padding
  Mat<T> R5 = std::sqrt(cosw) * lowering_rows<T>(N, K, 0.5L * m * tan_over_w, 2, lf) * number_exp<T>(N, lc) *
              raising_cols<T>(N, K, 0.5L * n * tan_over_w, 2, lf);
  record(rep, 4, L, R5);
}

}  // namespace

double IdentityReport::max_residual() const { return *std::max_element(residual.begin(), residual.end()); }

IdentityReport identity_oracle(int dim, double m, double n, int padding) {
  if (dim < 4) throw Error(ErrorCode::ConfigInvalid, "identity oracle needs dim >= 4");
  if (padding < 1) throw Error(ErrorCode::ConfigInvalid, "padding must be >= 1");
  if (!(std::abs(m) <= 0.3) || !(std::abs(n) <= 0.3))
    throw Error(ErrorCode::ConfigInvalid, "identity oracle requires |m|, |n| <= 0.3");

  const int N = dim * padding;
  const int K = dim / 2;
  IdentityReport rep{dim, N, m, n, {}, {}};
  shift_identities(rep, N, K, Quad(m), Quad(n));
  squeeze_identities(rep, N, K, Long(m), Long(n));
  return rep;
}

}  // namespace aqc
