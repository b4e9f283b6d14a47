#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "twinrep/irreducibility.hpp"
#include "twinrep/oracle.hpp"
#include "twinrep/reduction.hpp"
#include "twinrep/scalar.hpp"

namespace twinrep {

inline constexpr std::size_t kDefaultSweepCap = 1'000'000;

/// A parameter sweep of the decision procedure over n and a grid of a values.
template <Scalar F>
struct SweepSpec {
  int n_min = 4;
  int n_max = 4;
  std::vector<F> points;
  F b{1};
  bool with_oracle = false;
  std::size_t max_points = kDefaultSweepCap;
  unsigned jobs = 1;

  std::size_t row_count() const {
    if (n_max < n_min) return 0;
    return static_cast<std::size_t>(n_max - n_min + 1) * points.size();
  }
};

/// `steps` evenly spaced values from lo to hi inclusive (lo alone if steps = 1).
template <Scalar F>
std::vector<F> linspace(const F& lo, const F& hi, int steps) {
  if (steps < 1) throw DomainError("grid steps must be >= 1");
  std::vector<F> out;
  for (int i = 0; i < steps; ++i) {
    if (steps == 1) {
      out.push_back(lo);
    } else {
      out.push_back(lo + (hi - lo) * F(i) / F(steps - 1));
    }
  }
  return out;
}

/// Rectangle re x im, row-major over the imaginary axis.
template <Scalar F>
std::vector<F> rectangle_grid(const F& re_min, const F& re_max, int re_steps, const F& im_min,
                              const F& im_max, int im_steps) {
  std::vector<F> out;
  const auto res = linspace(re_min, re_max, re_steps);
  const auto ims = linspace(im_min, im_max, im_steps);
  for (const auto& im : ims)
    for (const auto& re : res) out.push_back(re + im * F::i());
  return out;
}

/// `count` points on the circle |a| = radius starting at a = radius.
inline std::vector<ComplexFloat> circle_grid(double radius, int count) {
  if (count < 1) throw DomainError("circle grid needs at least one point");
  std::vector<ComplexFloat> out;
  for (int k = 0; k < count; ++k) {
    out.emplace_back(std::polar(radius, 2.0 * std::numbers::pi * k / count));
  }
  return out;
}

struct SweepRow {
  int n = 0;
  double re = 0.0;
  double im = 0.0;
  std::string status;
  std::string reason;
  std::optional<double> abs_phat;
  std::optional<std::size_t> algebra_dim;
};

namespace detail {

inline std::string csv_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

template <Scalar F>
SweepRow sweep_point(int n, const F& a, const F& b, bool with_oracle) {
  SweepRow row;
  row.n = n;
  row.re = a.to_complex().real();
  row.im = a.to_complex().imag();
  try {
    const Verdict<F> v = decide(n, a, b);
    row.status = to_string(v.status);
    row.reason = to_string(v.reason);
    if (n >= 4) row.abs_phat = magnitude(cleared_poly(n).poly.eval(a));
    if (with_oracle) {
      const auto images = matrices_of(reduced_generators(n, a, b));
      row.algebra_dim = algebra_dimension(images);
    }
  } catch (const Error& e) {
    row.status = "error";
    row.reason = e.what();
  }
  return row;
}

}  // namespace detail

template <Scalar F>
std::vector<SweepRow> run_sweep(const SweepSpec<F>& spec) {
  if (spec.row_count() > spec.max_points) {
    throw DomainError("sweep grid has " + std::to_string(spec.row_count()) + " points, cap is " +
                      std::to_string(spec.max_points));
  }
  if (is_zero(spec.b)) throw DomainError("b must be nonzero");
  if (spec.n_min < 3 && spec.row_count() > 0) throw DomainError("sweep requires n >= 3");

  std::vector<SweepRow> rows(spec.row_count());
  const std::size_t per_n = spec.points.size();
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int n = spec.n_min + static_cast<int>(idx / per_n);
      rows[idx] = detail::sweep_point(n, spec.points[idx % per_n], spec.b, spec.with_oracle);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(rows.size())));
  if (jobs <= 1) {
    work(0, rows.size());
  } else {
    // Each worker owns a contiguous slice; rows stay in grid order.
    std::vector<std::thread> pool;
    const std::size_t chunk = (rows.size() + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(rows.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_oracle) {
  out << "n,re,im,status,reason,abs_phat";
  if (with_oracle) out << ",algebra_dim";
  out << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << detail::csv_double(r.re) << ',' << detail::csv_double(r.im) << ',' << r.status << ','
        << '"' << r.reason << '"' << ',' << (r.abs_phat ? detail::csv_double(*r.abs_phat) : "");
    if (with_oracle) out << ',' << (r.algebra_dim ? std::to_string(*r.algebra_dim) : "");
    out << '\n';
  }
}

}  // namespace twinrep
