// Lowers Transformer model shapes into an ordered list of GEMM tasks tagged
// MHA (dynamic x dynamic) or FC (static weight x dynamic activation), plus
// the non-GEMM digital operations with element counts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dota/common.hpp"

namespace dota::workloads {

struct TransformerConfig {
  std::string model_name;
  int layers = 0;
  int hidden_dim = 0;
  int heads = 0;
  int ffn_dim = 0;
  int seq_len = 0;
  bool include_classifier = false;
  int num_classes = 1000;

  int head_dim() const { return hidden_dim / heads; }

  void validate() const {
    if (layers < 1 || hidden_dim < 1 || heads < 1 || ffn_dim < 1 ||
        seq_len < 1)
      throw config_error("TransformerConfig: all dimensions must be >= 1");
    if (hidden_dim % heads != 0)
      throw config_error(
          "TransformerConfig: hidden_dim must be divisible by heads");
  }
};

inline void to_json(nlohmann::json& j, const TransformerConfig& c) {
  j = {{"model_name", c.model_name}, {"layers", c.layers},
       {"hidden_dim", c.hidden_dim}, {"heads", c.heads},
       {"ffn_dim", c.ffn_dim},       {"seq_len", c.seq_len},
       {"include_classifier", c.include_classifier},
       {"num_classes", c.num_classes}};
}

inline void from_json(const nlohmann::json& j, TransformerConfig& c) {
  c.model_name = j.value("model_name", "");
  c.layers = j.at("layers").get<int>();
  c.hidden_dim = j.at("hidden_dim").get<int>();
  c.heads = j.at("heads").get<int>();
  c.ffn_dim = j.at("ffn_dim").get<int>();
  c.seq_len = j.at("seq_len").get<int>();
  c.include_classifier = j.value("include_classifier", false);
  c.num_classes = j.value("num_classes", 1000);
  c.validate();
}

enum class OperandKind { static_weight, dynamic_activation };
enum class Group { mha, fc };

inline const char* to_string(OperandKind k) {
  return k == OperandKind::static_weight ? "static-weight"
                                         : "dynamic-activation";
}
inline const char* to_string(Group g) { return g == Group::mha ? "MHA" : "FC"; }

//! One matrix multiplication [m, k] x [k, n], repeated `repeat` times
//! (folding per-head and per-layer multiplicity).
struct GemmTask {
  std::string name;
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t n = 0;
  OperandKind operand_a_kind = OperandKind::dynamic_activation;
  OperandKind operand_b_kind = OperandKind::static_weight;
  Group group = Group::fc;
  std::int64_t repeat = 1;

  std::int64_t macs() const { return m * k * n * repeat; }
};

//! Non-GEMM work handled by the digital units (softmax, LayerNorm, GELU).
struct DigitalOp {
  std::string name;
  std::int64_t elements = 0;  // per instance
  std::int64_t repeat = 1;

  std::int64_t total_elements() const { return elements * repeat; }
};

struct WorkloadGraph {
  std::string model_name;
  std::vector<GemmTask> gemms;
  std::vector<DigitalOp> digital_ops;

  std::int64_t total_macs() const {
    std::int64_t total = 0;
    for (const auto& g : gemms) total += g.macs();
    return total;
  }

  std::int64_t gemm_instances(Group group) const {
    std::int64_t total = 0;
    for (const auto& g : gemms)
      if (g.group == group) total += g.repeat;
    return total;
  }
};

inline void to_json(nlohmann::json& j, const GemmTask& t) {
  j = {{"name", t.name},
       {"m", t.m},
       {"k", t.k},
       {"n", t.n},
       {"operand_a", to_string(t.operand_a_kind)},
       {"operand_b", to_string(t.operand_b_kind)},
       {"group", to_string(t.group)},
       {"repeat", t.repeat}};
}

inline void from_json(const nlohmann::json& j, GemmTask& t) {
  t.name = j.at("name").get<std::string>();
  t.m = j.at("m").get<std::int64_t>();
  t.k = j.at("k").get<std::int64_t>();
  t.n = j.at("n").get<std::int64_t>();
  t.operand_a_kind = j.at("operand_a").get<std::string>() == "static-weight"
                         ? OperandKind::static_weight
                         : OperandKind::dynamic_activation;
  t.operand_b_kind = j.at("operand_b").get<std::string>() == "static-weight"
                         ? OperandKind::static_weight
                         : OperandKind::dynamic_activation;
  t.group = j.at("group").get<std::string>() == "MHA" ? Group::mha : Group::fc;
  t.repeat = j.at("repeat").get<std::int64_t>();
}

inline void to_json(nlohmann::json& j, const DigitalOp& o) {
  j = {{"name", o.name}, {"elements", o.elements}, {"repeat", o.repeat}};
}

inline void from_json(const nlohmann::json& j, DigitalOp& o) {
  o.name = j.at("name").get<std::string>();
  o.elements = j.at("elements").get<std::int64_t>();
  o.repeat = j.at("repeat").get<std::int64_t>();
}

inline void to_json(nlohmann::json& j, const WorkloadGraph& g) {
  j = {{"model_name", g.model_name},
       {"gemms", g.gemms},
       {"digital_ops", g.digital_ops}};
}

inline void from_json(const nlohmann::json& j, WorkloadGraph& g) {
  g.model_name = j.at("model_name").get<std::string>();
  g.gemms = j.at("gemms").get<std::vector<GemmTask>>();
  g.digital_ops = j.at("digital_ops").get<std::vector<DigitalOp>>();
}

//! Encoder-block lowering. Per layer: Q/K/V projections, per-head QK^T and
//! attention-times-V, the output projection, and the two FFN linears. Layer
//! and head multiplicity is folded into `repeat`. Attention score scaling,
//! softmax, LayerNorm, and GELU are recorded as digital ops.
inline WorkloadGraph extract_gemms(const TransformerConfig& cfg) {
  cfg.validate();
  const std::int64_t s = cfg.seq_len;
  const std::int64_t d = cfg.hidden_dim;
  const std::int64_t h = cfg.heads;
  const std::int64_t dk = cfg.head_dim();
  const std::int64_t f = cfg.ffn_dim;
  const std::int64_t l = cfg.layers;

  const auto act = OperandKind::dynamic_activation;
  const auto wt = OperandKind::static_weight;

  WorkloadGraph g;
  g.model_name = cfg.model_name;
  g.gemms = {
      {"q_proj", s, d, d, act, wt, Group::fc, l},
      {"k_proj", s, d, d, act, wt, Group::fc, l},
      {"v_proj", s, d, d, act, wt, Group::fc, l},
      {"qk_t", s, dk, s, act, act, Group::mha, h * l},
      {"attn_v", s, s, dk, act, act, Group::mha, h * l},
      {"out_proj", s, d, d, act, wt, Group::fc, l},
      {"ffn1", s, d, f, act, wt, Group::fc, l},
      {"ffn2", s, f, d, act, wt, Group::fc, l},
  };
  if (cfg.include_classifier)
    g.gemms.push_back({"classifier", 1, d, cfg.num_classes, act, wt,
                       Group::fc, 1});

  g.digital_ops = {
      {"softmax", s * s, h * l},
      {"layernorm", s * d, 2 * l},
      {"gelu", s * f, l},
  };
  return g;
}

// ---------------------------------------------------------------------------
// Shipped model presets
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& model_preset_names() {
  static const std::vector<std::string> names = {
      "deit-t",        "deit-s",        "deit-b",       "bert-base-128",
      "bert-base-384", "bert-large-128", "bert-large-384"};
  return names;
}

}  // namespace dota::workloads
