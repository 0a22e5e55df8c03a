#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tapg/mat.hpp"
#include "tapg/nn.hpp"

namespace tapg {

/// One GRU layer. Gate convention (pinned for reproducibility):
///   z = sigmoid(Wz x + Uz h + bz)
///   r = sigmoid(Wr x + Ur h + br)
///   n = tanh(Wn x + Un (r.h) + bn)
///   h' = (1-z).h + z.n
template <typename T>
struct GruLayerParamsT {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  Mat<T> w_z, u_z;
  Vec<T> b_z;
  Mat<T> w_r, u_r;
  Vec<T> b_r;
  Mat<T> w_n, u_n;
  Vec<T> b_n;

  GruLayerParamsT() = default;
  GruLayerParamsT(std::size_t in, std::size_t hidden)
      : input_dim(in),
        hidden_dim(hidden),
        w_z(hidden, in),
        u_z(hidden, hidden),
        b_z(hidden, T(0)),
        w_r(hidden, in),
        u_r(hidden, hidden),
        b_r(hidden, T(0)),
        w_n(hidden, in),
        u_n(hidden, hidden),
        b_n(hidden, T(0)) {}
};

using GruLayerParams = GruLayerParamsT<float>;

template <typename T>
struct GruStepCache {
  Vec<T> x, h_prev;
  Vec<T> z, r, n;
  Vec<T> rh;  // r . h_prev, input to the Un product
};

template <typename T>
void check_gru_shapes(const GruLayerParamsT<T>& p, std::size_t xlen,
                      std::size_t hlen) {
  if (xlen != p.input_dim || hlen != p.hidden_dim)
    fail(ErrorCode::kShapeMismatch,
         "gru_step: got x[" + std::to_string(xlen) + "], h[" +
             std::to_string(hlen) + "] for layer expecting x[" +
             std::to_string(p.input_dim) + "], h[" +
             std::to_string(p.hidden_dim) + "]");
}

template <typename T>
Vec<T> gru_step_cached(const GruLayerParamsT<T>& p, const Vec<T>& x,
                       const Vec<T>& h_prev, GruStepCache<T>* cache) {
  check_gru_shapes(p, x.size(), h_prev.size());
  const std::size_t h = p.hidden_dim;

  Vec<T> az = p.b_z, ar = p.b_r;
  matvec_acc(p.w_z, std::span<const T>(x), std::span<T>(az));
  matvec_acc(p.u_z, std::span<const T>(h_prev), std::span<T>(az));
  matvec_acc(p.w_r, std::span<const T>(x), std::span<T>(ar));
  matvec_acc(p.u_r, std::span<const T>(h_prev), std::span<T>(ar));
  Vec<T> z = az, r = ar;
  apply_activation(Activation::kSigmoid, std::span<T>(z));
  apply_activation(Activation::kSigmoid, std::span<T>(r));

  Vec<T> rh(h);
  for (std::size_t i = 0; i < h; ++i) rh[i] = r[i] * h_prev[i];

  Vec<T> an = p.b_n;
  matvec_acc(p.w_n, std::span<const T>(x), std::span<T>(an));
  matvec_acc(p.u_n, std::span<const T>(rh), std::span<T>(an));
  Vec<T> n(h);
  for (std::size_t i = 0; i < h; ++i) n[i] = std::tanh(an[i]);

  Vec<T> h_next(h);
  for (std::size_t i = 0; i < h; ++i)
    h_next[i] = (T(1) - z[i]) * h_prev[i] + z[i] * n[i];

  if (cache) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->z = std::move(z);
    cache->r = std::move(r);
    cache->n = std::move(n);
    cache->rh = std::move(rh);
  }
  return h_next;
}

template <typename T>
Vec<T> gru_step(const GruLayerParamsT<T>& p, const Vec<T>& x,
                const Vec<T>& h_prev) {
  return gru_step_cached<T>(p, x, h_prev, nullptr);
}

/// Accumulates parameter gradients into `g`; writes fresh dh_prev and dx.
template <typename T>
void gru_step_backward(const GruLayerParamsT<T>& p, const GruStepCache<T>& c,
                       const Vec<T>& dh, GruLayerParamsT<T>& g,
                       Vec<T>& dh_prev, Vec<T>& dx) {
  const std::size_t h = p.hidden_dim;
  Vec<T> dz_pre(h), dn_pre(h);
  dh_prev.assign(h, T(0));
  for (std::size_t i = 0; i < h; ++i) {
    dz_pre[i] = dh[i] * (c.n[i] - c.h_prev[i]) * c.z[i] * (T(1) - c.z[i]);
    dn_pre[i] = dh[i] * c.z[i] * (T(1) - c.n[i] * c.n[i]);
    dh_prev[i] = dh[i] * (T(1) - c.z[i]);
  }

  // candidate path
  add_outer(g.w_n, std::span<const T>(dn_pre), std::span<const T>(c.x));
  add_outer(g.u_n, std::span<const T>(dn_pre), std::span<const T>(c.rh));
  add_inplace(std::span<T>(g.b_n), std::span<const T>(dn_pre));
  Vec<T> drh(h, T(0));
  matvec_transposed_acc(p.u_n, std::span<const T>(dn_pre), std::span<T>(drh));
  Vec<T> dr_pre(h);
  for (std::size_t i = 0; i < h; ++i) {
    dh_prev[i] += drh[i] * c.r[i];
    dr_pre[i] = drh[i] * c.h_prev[i] * c.r[i] * (T(1) - c.r[i]);
  }

  // reset gate
  add_outer(g.w_r, std::span<const T>(dr_pre), std::span<const T>(c.x));
  add_outer(g.u_r, std::span<const T>(dr_pre), std::span<const T>(c.h_prev));
  add_inplace(std::span<T>(g.b_r), std::span<const T>(dr_pre));
  matvec_transposed_acc(p.u_r, std::span<const T>(dr_pre),
                        std::span<T>(dh_prev));

  // update gate
  add_outer(g.w_z, std::span<const T>(dz_pre), std::span<const T>(c.x));
  add_outer(g.u_z, std::span<const T>(dz_pre), std::span<const T>(c.h_prev));
  add_inplace(std::span<T>(g.b_z), std::span<const T>(dz_pre));
  matvec_transposed_acc(p.u_z, std::span<const T>(dz_pre),
                        std::span<T>(dh_prev));

  dx.assign(p.input_dim, T(0));
  matvec_transposed_acc(p.w_z, std::span<const T>(dz_pre), std::span<T>(dx));
  matvec_transposed_acc(p.w_r, std::span<const T>(dr_pre), std::span<T>(dx));
  matvec_transposed_acc(p.w_n, std::span<const T>(dn_pre), std::span<T>(dx));
}

}  // namespace tapg
