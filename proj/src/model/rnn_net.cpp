// model/rnn_net.cpp
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

// Attention RNN: stacked bidirectional GRU encoder, stacked
// unidirectional GRU decoder with a bilinear attention over the encoder
// outputs and an attentional output layer.

#include <memory>

#include "gecgan/model/generator.hpp"
#include "gecgan/util/error.hpp"
#include "net_common.hpp"

namespace gecgan {
namespace model {

namespace {

class RnnNet : public Seq2SeqNet {
 public:
  RnnNet(const GeneratorConfig &cfg, nn::ParamStore &ps, Rng &rng) : cfg_(cfg) {
    const int e = cfg.embed_dim;
    const int h = cfg.hidden_dim;
    const int h2 = h / 2;
    emb_ = ps.add_uniform("emb", cfg.vocab_size, e, 0.08, rng);
    for (int l = 0; l < cfg.num_layers; ++l) {
      const int in = l == 0 ? e : h;
      enc_f_.push_back(register_gru(ps, "enc.l" + std::to_string(l) + ".f", in, h2, rng));
      enc_b_.push_back(register_gru(ps, "enc.l" + std::to_string(l) + ".b", in, h2, rng));
      dec_.push_back(register_gru(ps, "dec.l" + std::to_string(l), l == 0 ? e : h, h, rng));
      init_w_.push_back(ps.add_glorot("dec.init.l" + std::to_string(l) + ".w", h, h, rng));
      init_b_.push_back(ps.add("dec.init.l" + std::to_string(l) + ".b", 1, h));
    }
    attn_wa_ = ps.add_glorot("attn.wa", h, h, rng);
    attn_wc_ = ps.add_glorot("attn.wc", h, 2 * h, rng);
    attn_bc_ = ps.add("attn.bc", 1, h);
    out_w_ = ps.add_glorot("out.w", cfg.vocab_size, h, rng);
    out_b_ = ps.add("out.b", 1, cfg.vocab_size);
  }

  EncCtx encode(nn::Tape &t, const Ids &x, bool train, Rng *rng) const override {
    if (x.empty()) throw ValidationError("encode: empty source");
    ParamNodes pn(t);
    int cur = t.gather(pn(emb_), x);
    for (int l = 0; l < cfg_.num_layers; ++l) {
      cur = bi_gru_layer(t, pn, enc_f_[l], enc_b_[l], cur, cfg_.hidden_dim / 2);
      if (train && rng) cur = t.dropout(cur, cfg_.layer_dropout, *rng);
    }
    return EncCtx{{cur}};
  }

  DecState dec_init(nn::Tape &t, const EncCtx &enc) const override {
    ParamNodes pn(t);
    const int mean = t.mean_rows(enc.nodes[0]);
    DecState st;
    st.mem.resize(cfg_.num_layers);
    for (int l = 0; l < cfg_.num_layers; ++l) {
      st.mem[l] = {t.tanh_n(t.linear(mean, pn(init_w_[l]), pn(init_b_[l])))};
    }
    return st;
  }

  int dec_step(nn::Tape &t, const EncCtx &enc, DecState &st, int prev_id, bool train,
               Rng *rng) const override {
    ParamNodes pn(t);
    const std::vector<int> prev{prev_id};
    int cur = t.gather(pn(emb_), prev);
    for (int l = 0; l < cfg_.num_layers; ++l) {
      const int h_new = gru_cell(t, pn, dec_[l], cur, st.mem[l][0]);
      st.mem[l][0] = h_new;
      cur = h_new;
      if (train && rng) cur = t.dropout(cur, cfg_.layer_dropout, *rng);
    }
    // Luong-style bilinear attention over the encoder outputs.
    const int enc_out = enc.nodes[0];
    const int query = t.linear(cur, pn(attn_wa_));
    int alpha = t.softmax_rows(t.matmul_nt(query, enc_out));
    if (train && rng) alpha = t.dropout(alpha, cfg_.attention_dropout, *rng);
    const int context = t.matmul(alpha, enc_out);
    const int attentional =
        t.tanh_n(t.linear(t.concat_cols(cur, context), pn(attn_wc_), pn(attn_bc_)));
    st.t += 1;
    return t.linear(attentional, pn(out_w_), pn(out_b_));
  }

 private:
  GeneratorConfig cfg_;
  int emb_;
  std::vector<GruParamIds> enc_f_, enc_b_, dec_;
  std::vector<int> init_w_, init_b_;
  int attn_wa_, attn_wc_, attn_bc_;
  int out_w_, out_b_;
};

}  // namespace

std::unique_ptr<Seq2SeqNet> make_rnn_net(const GeneratorConfig &cfg, nn::ParamStore &params,
                                         Rng &init_rng) {
  return std::make_unique<RnnNet>(cfg, params, init_rng);
}

}  // namespace model
}  // namespace gecgan
