#include "fracred/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace fracred {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::length_mismatch: return "length_mismatch";
    case ErrorCode::nonpositive_parameter: return "nonpositive_parameter";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::singular_system: return "singular_system";
    case ErrorCode::pole_hit: return "pole_hit";
    case ErrorCode::antiresonance: return "antiresonance";
    case ErrorCode::degenerate_argument: return "degenerate_argument";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::partition_mismatch: return "partition_mismatch";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::step_too_large: return "step_too_large";
    case ErrorCode::rank_deficient: return "rank_deficient";
    case ErrorCode::unbounded_response: return "unbounded_response";
    case ErrorCode::ill_conditioned_fit: return "ill_conditioned_fit";
    case ErrorCode::validation: return "validation";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::domain: return "domain";
  }
  return "unknown";
}

namespace {

constexpr double kPivotFloor = 1e-300;

// In-place LU with partial pivoting over scalar T, then two substitutions.
template <typename T>
std::vector<T> lu_solve_impl(std::vector<T>& a, std::vector<T>& b,
                             std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[perm[col] * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double mag = std::abs(a[perm[r] * n + col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best < kPivotFloor) {
      raise(ErrorCode::singular_system, "lu_solve: singular matrix");
    }
    std::swap(perm[col], perm[pivot]);
    const std::size_t prow = perm[col];
    const T diag = a[prow * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const std::size_t row = perm[r];
      const T factor = a[row * n + col] / diag;
      a[row * n + col] = factor;
      for (std::size_t c = col + 1; c < n; ++c) {
        a[row * n + c] -= factor * a[prow * n + c];
      }
    }
  }

  std::vector<T> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    T sum = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) sum -= a[perm[i] * n + j] * y[j];
    y[i] = sum;
  }
  std::vector<T> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    T sum = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) sum -= a[perm[ii] * n + j] * x[j];
    x[ii] = sum / a[perm[ii] * n + ii];
  }
  return x;
}

double inf_norm(const std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm = std::max(norm, std::abs(x));
  return norm;
}

}  // namespace

std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) {
    raise(ErrorCode::length_mismatch, "lu_solve: dimension mismatch");
  }
  std::vector<Complex> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = a(i, j);
  return lu_solve_impl(flat, b, n);
}

std::vector<double> lu_solve_real(std::vector<double> a,
                                  std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) {
    raise(ErrorCode::length_mismatch, "lu_solve_real: dimension mismatch");
  }
  return lu_solve_impl(a, b, n);
}

NewtonResult newton_solve(const ResidualFn& fn, std::vector<double> x0,
                          const NewtonConfig& config) {
  NewtonResult result;
  const std::size_t n = x0.size();
  std::vector<double> x = std::move(x0);
  std::vector<double> f = fn(x);
  if (f.size() != n) {
    raise(ErrorCode::length_mismatch,
          "newton_solve: residual dimension differs from unknowns");
  }
  double fnorm = inf_norm(f);
  result.residual_history.push_back(fnorm);

  std::vector<double> best_x = x;
  double best_norm = fnorm;

  for (int iter = 0; iter < config.max_iter; ++iter) {
    if (fnorm < config.tol) {
      result.x = x;
      result.residual_norm = fnorm;
      result.converged = true;
      result.iterations = iter;
      return result;
    }

    // central-difference Jacobian, relative step
    std::vector<double> jac(n * n);
    std::vector<double> xp = x, xm = x;
    for (std::size_t j = 0; j < n; ++j) {
      const double h = config.fd_step * std::max(1.0, std::abs(x[j]));
      xp[j] = x[j] + h;
      xm[j] = x[j] - h;
      const std::vector<double> fp = fn(xp);
      const std::vector<double> fm = fn(xm);
      for (std::size_t i = 0; i < n; ++i) {
        jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
      }
      xp[j] = x[j];
      xm[j] = x[j];
    }

    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -f[i];
    std::vector<double> step;
    try {
      step = lu_solve_real(jac, rhs);
    } catch (const Error&) {
      break;  // singular Jacobian: report best iterate
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= config.max_halvings; ++h) {
      std::vector<double> trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + lambda * step[i];
      std::vector<double> ftrial = fn(trial);
      const double tnorm = inf_norm(ftrial);
      if (std::isfinite(tnorm) && tnorm < fnorm) {
        x = std::move(trial);
        f = std::move(ftrial);
        fnorm = tnorm;
        accepted = true;
        break;
      }
      lambda *= config.backtrack;
    }
    if (!accepted) break;  // line search stalled

    result.residual_history.push_back(fnorm);
    result.iterations = iter + 1;
    if (fnorm < best_norm) {
      best_norm = fnorm;
      best_x = x;
    }
  }

  result.converged = best_norm < config.tol;
  result.x = std::move(best_x);
  result.residual_norm = best_norm;
  return result;
}

Complex principal_log(Complex z) {
  if (z == Complex(0.0, 0.0)) {
    raise(ErrorCode::domain, "principal_log: log of zero");
  }
  // pin the branch cut so that Arg(-r) = +pi even for imag = -0.0
  if (z.imag() == 0.0 && z.real() < 0.0) {
    return {std::log(-z.real()), M_PI};
  }
  return std::log(z);
}

Complex principal_pow(Complex base, Complex exponent) {
  return std::exp(exponent * principal_log(base));
}

namespace {

// Sturm count: eigenvalues of the symmetric tridiagonal matrix below x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double x) {
  int count = 0;
  double q = 1.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double off = (i == 0) ? 0.0 : e[i - 1];
    q = d[i] - x - (q == 0.0 ? std::abs(off) / 1e-30 : off * off / q);
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> bisection_eigenvalues(const std::vector<double>& d,
                                          const std::vector<double>& e) {
  const std::size_t n = d.size();
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  lo -= 1e-12 * std::max(1.0, std::abs(lo));
  hi += 1e-12 * std::max(1.0, std::abs(hi));

  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(d, e, mid) <= static_cast<int>(k)) {
        a = mid;
      } else {
        b = mid;
      }
      if (b - a <= 1e-15 * std::max(1.0, std::abs(b))) break;
    }
    eig[k] = 0.5 * (a + b);
  }
  return eig;
}

}  // namespace

std::vector<double> sym_tridiag_eigenvalues(std::vector<double> diag,
                                            std::vector<double> offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (offdiag.size() + 1 != n) {
    raise(ErrorCode::length_mismatch,
          "sym_tridiag_eigenvalues: offdiag must have n-1 entries");
  }
  if (n == 1) return diag;

  const std::vector<double> d0 = diag, e0 = offdiag;
  std::vector<double> d = std::move(diag);
  std::vector<double> e = std::move(offdiag);
  e.push_back(0.0);

  // QL with implicit shifts (tql1-style, eigenvalues only)
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 50) {
          return bisection_eigenvalues(d0, e0);
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && m - l > 1) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace fracred
