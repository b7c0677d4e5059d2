// model/transformer_net.cpp
//
// Copyright 2026  The gecgan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Pre-norm transformer encoder-decoder with sinusoidal positions.  The
// decoder is built incrementally: each dec_step appends that position's
// self-attention keys/values to the state, so causality holds by
// construction and teacher forcing reuses the same step code.

#include <cmath>
#include <memory>
#include <string>

#include "gecgan/model/generator.hpp"
#include "gecgan/util/error.hpp"
#include "net_common.hpp"

namespace gecgan {
namespace model {

namespace {

struct AttnParams {
  int wq, bq, wk, bk, wv, bv, wo, bo;
};

struct LnParams {
  int g, b;
};

struct LayerParams {
  LnParams ln1;
  AttnParams self_attn;
  LnParams ln2;
  AttnParams cross_attn;  // decoder only
  LnParams ln3;           // decoder only
  int ffn_w1, ffn_b1, ffn_w2, ffn_b2;
};

AttnParams register_attn(nn::ParamStore &ps, const std::string &prefix, int dim, Rng &rng) {
  AttnParams p;
  p.wq = ps.add_glorot(prefix + ".wq", dim, dim, rng);
  p.bq = ps.add(prefix + ".bq", 1, dim);
  p.wk = ps.add_glorot(prefix + ".wk", dim, dim, rng);
  p.bk = ps.add(prefix + ".bk", 1, dim);
  p.wv = ps.add_glorot(prefix + ".wv", dim, dim, rng);
  p.bv = ps.add(prefix + ".bv", 1, dim);
  p.wo = ps.add_glorot(prefix + ".wo", dim, dim, rng);
  p.bo = ps.add(prefix + ".bo", 1, dim);
  return p;
}

LnParams register_ln(nn::ParamStore &ps, const std::string &prefix, int dim) {
  return {ps.add_const(prefix + ".g", 1, dim, 1.0), ps.add(prefix + ".b", 1, dim)};
}

class TransformerNet : public Seq2SeqNet {
 public:
  TransformerNet(const GeneratorConfig &cfg, nn::ParamStore &ps, Rng &rng)
      : cfg_(cfg), head_dim_(cfg.embed_dim / cfg.num_heads) {
    const int e = cfg.embed_dim;
    emb_ = ps.add_uniform("emb", cfg.vocab_size, e, 0.08, rng);
    for (int l = 0; l < cfg.num_layers; ++l) {
      const std::string el = "enc.l" + std::to_string(l);
      LayerParams enc;
      enc.ln1 = register_ln(ps, el + ".ln1", e);
      enc.self_attn = register_attn(ps, el + ".self", e, rng);
      enc.ln2 = register_ln(ps, el + ".ln2", e);
      enc.ffn_w1 = ps.add_glorot(el + ".ffn.w1", cfg.ffn_dim, e, rng);
      enc.ffn_b1 = ps.add(el + ".ffn.b1", 1, cfg.ffn_dim);
      enc.ffn_w2 = ps.add_glorot(el + ".ffn.w2", e, cfg.ffn_dim, rng);
      enc.ffn_b2 = ps.add(el + ".ffn.b2", 1, e);
      enc_layers_.push_back(enc);

      const std::string dl = "dec.l" + std::to_string(l);
      LayerParams dec;
      dec.ln1 = register_ln(ps, dl + ".ln1", e);
      dec.self_attn = register_attn(ps, dl + ".self", e, rng);
      dec.ln2 = register_ln(ps, dl + ".ln2", e);
      dec.cross_attn = register_attn(ps, dl + ".cross", e, rng);
      dec.ln3 = register_ln(ps, dl + ".ln3", e);
      dec.ffn_w1 = ps.add_glorot(dl + ".ffn.w1", cfg.ffn_dim, e, rng);
      dec.ffn_b1 = ps.add(dl + ".ffn.b1", 1, cfg.ffn_dim);
      dec.ffn_w2 = ps.add_glorot(dl + ".ffn.w2", e, cfg.ffn_dim, rng);
      dec.ffn_b2 = ps.add(dl + ".ffn.b2", 1, e);
      dec_layers_.push_back(dec);
    }
    enc_ln_ = register_ln(ps, "enc.final_ln", e);
    dec_ln_ = register_ln(ps, "dec.final_ln", e);
    out_w_ = ps.add_glorot("out.w", cfg.vocab_size, e, rng);
    out_b_ = ps.add("out.b", 1, cfg.vocab_size);
  }

  EncCtx encode(nn::Tape &t, const Ids &x, bool train, Rng *rng) const override {
    if (x.empty()) throw ValidationError("encode: empty source");
    ParamNodes pn(t);
    const int length = static_cast<int>(x.size());
    int cur = t.scale(t.gather(pn(emb_), x), std::sqrt(static_cast<double>(cfg_.embed_dim)));
    cur = t.add(cur, t.input(sinusoid_rows(length, cfg_.embed_dim)));
    if (train && rng) cur = t.dropout(cur, cfg_.layer_dropout, *rng);

    for (const auto &layer : enc_layers_) {
      // Self attention sublayer.
      const int a_in = t.layer_norm(cur, pn(layer.ln1.g), pn(layer.ln1.b));
      const int q = t.linear(a_in, pn(layer.self_attn.wq), pn(layer.self_attn.bq));
      const int k = t.linear(a_in, pn(layer.self_attn.wk), pn(layer.self_attn.bk));
      const int v = t.linear(a_in, pn(layer.self_attn.wv), pn(layer.self_attn.bv));
      const int ctx = multi_head(t, q, k, v, train, rng);
      int o = t.linear(ctx, pn(layer.self_attn.wo), pn(layer.self_attn.bo));
      if (train && rng) o = t.dropout(o, cfg_.layer_dropout, *rng);
      cur = t.add(cur, o);
      // Feed forward sublayer.
      const int f_in = t.layer_norm(cur, pn(layer.ln2.g), pn(layer.ln2.b));
      int f = t.linear(t.relu_n(t.linear(f_in, pn(layer.ffn_w1), pn(layer.ffn_b1))),
                       pn(layer.ffn_w2), pn(layer.ffn_b2));
      if (train && rng) f = t.dropout(f, cfg_.layer_dropout, *rng);
      cur = t.add(cur, f);
    }
    cur = t.layer_norm(cur, pn(enc_ln_.g), pn(enc_ln_.b));

    // Cross-attention keys/values are fixed per sentence; compute once.
    EncCtx enc;
    enc.nodes.push_back(cur);
    for (const auto &layer : dec_layers_) {
      enc.nodes.push_back(t.linear(cur, pn(layer.cross_attn.wk), pn(layer.cross_attn.bk)));
      enc.nodes.push_back(t.linear(cur, pn(layer.cross_attn.wv), pn(layer.cross_attn.bv)));
    }
    return enc;
  }

  DecState dec_init(nn::Tape &, const EncCtx &) const override {
    DecState st;
    st.mem.resize(2 * dec_layers_.size());
    return st;
  }

  int dec_step(nn::Tape &t, const EncCtx &enc, DecState &st, int prev_id, bool train,
               Rng *rng) const override {
    ParamNodes pn(t);
    const std::vector<int> prev{prev_id};
    int cur = t.scale(t.gather(pn(emb_), prev), std::sqrt(static_cast<double>(cfg_.embed_dim)));
    cur = t.add(cur, t.input(sinusoid_row(st.t, cfg_.embed_dim)));
    if (train && rng) cur = t.dropout(cur, cfg_.layer_dropout, *rng);

    for (size_t l = 0; l < dec_layers_.size(); ++l) {
      const auto &layer = dec_layers_[l];
      // Causal self attention over the accumulated positions.
      const int a_in = t.layer_norm(cur, pn(layer.ln1.g), pn(layer.ln1.b));
      const int q = t.linear(a_in, pn(layer.self_attn.wq), pn(layer.self_attn.bq));
      st.mem[2 * l].push_back(t.linear(a_in, pn(layer.self_attn.wk), pn(layer.self_attn.bk)));
      st.mem[2 * l + 1].push_back(t.linear(a_in, pn(layer.self_attn.wv), pn(layer.self_attn.bv)));
      const int keys = t.stack_rows(st.mem[2 * l]);
      const int vals = t.stack_rows(st.mem[2 * l + 1]);
      const int self_ctx = multi_head(t, q, keys, vals, train, rng);
      int o = t.linear(self_ctx, pn(layer.self_attn.wo), pn(layer.self_attn.bo));
      if (train && rng) o = t.dropout(o, cfg_.layer_dropout, *rng);
      cur = t.add(cur, o);
      // Cross attention against the precomputed encoder projections.
      const int c_in = t.layer_norm(cur, pn(layer.ln2.g), pn(layer.ln2.b));
      const int cq = t.linear(c_in, pn(layer.cross_attn.wq), pn(layer.cross_attn.bq));
      const int cross_ctx =
          multi_head(t, cq, enc.nodes[1 + 2 * l], enc.nodes[2 + 2 * l], train, rng);
      int co = t.linear(cross_ctx, pn(layer.cross_attn.wo), pn(layer.cross_attn.bo));
      if (train && rng) co = t.dropout(co, cfg_.layer_dropout, *rng);
      cur = t.add(cur, co);
      // Feed forward.
      const int f_in = t.layer_norm(cur, pn(layer.ln3.g), pn(layer.ln3.b));
      int f = t.linear(t.relu_n(t.linear(f_in, pn(layer.ffn_w1), pn(layer.ffn_b1))),
                       pn(layer.ffn_w2), pn(layer.ffn_b2));
      if (train && rng) f = t.dropout(f, cfg_.layer_dropout, *rng);
      cur = t.add(cur, f);
    }
    cur = t.layer_norm(cur, pn(dec_ln_.g), pn(dec_ln_.b));
    st.t += 1;
    return t.linear(cur, pn(out_w_), pn(out_b_));
  }

 private:
  // q: Lq x e, k/v: Lk x e -> Lq x e, heads side by side.
  int multi_head(nn::Tape &t, int q, int k, int v, bool train, Rng *rng) const {
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head_dim_));
    int out = -1;
    for (int h = 0; h < cfg_.num_heads; ++h) {
      const int c0 = h * head_dim_;
      const int c1 = c0 + head_dim_;
      const int qh = t.slice_cols(q, c0, c1);
      const int kh = t.slice_cols(k, c0, c1);
      const int vh = t.slice_cols(v, c0, c1);
      int alpha = t.softmax_rows(t.scale(t.matmul_nt(qh, kh), inv_sqrt));
      if (train && rng) alpha = t.dropout(alpha, cfg_.attention_dropout, *rng);
      const int ctx = t.matmul(alpha, vh);
      out = h == 0 ? ctx : t.concat_cols(out, ctx);
    }
    return out;
  }

  GeneratorConfig cfg_;
  int head_dim_;
  int emb_;
  std::vector<LayerParams> enc_layers_, dec_layers_;
  LnParams enc_ln_, dec_ln_;
  int out_w_, out_b_;
};

}  // namespace

std::unique_ptr<Seq2SeqNet> make_transformer_net(const GeneratorConfig &cfg,
                                                 nn::ParamStore &params, Rng &init_rng) {
  return std::make_unique<TransformerNet>(cfg, params, init_rng);
}

}  // namespace model
}  // namespace gecgan
