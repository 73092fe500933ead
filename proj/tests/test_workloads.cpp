#include <doctest.h>

#include <json.hpp>

#include "dota/workloads.hpp"
#include "oracles.hpp"

using namespace dota;
using namespace dota::workloads;

TEST_CASE("extract_gemms: tiny config has hand-checkable shapes") {
  TransformerConfig cfg;
  cfg.model_name = "tiny";
  cfg.layers = 1;
  cfg.hidden_dim = 4;
  cfg.heads = 1;
  cfg.ffn_dim = 8;
  cfg.seq_len = 2;

  const auto graph = extract_gemms(cfg);
  REQUIRE(graph.gemms.size() == 8);

  auto find = [&](const std::string& name) -> const GemmTask& {
    for (const auto& g : graph.gemms)
      if (g.name == name) return g;
    throw std::runtime_error("missing task " + name);
  };
  for (const char* proj : {"q_proj", "k_proj", "v_proj"}) {
    const auto& t = find(proj);
    CHECK(t.m == 2);
    CHECK(t.k == 4);
    CHECK(t.n == 4);
    CHECK(t.group == Group::fc);
  }
  const auto& qkt = find("qk_t");
  CHECK(qkt.m == 2);
  CHECK(qkt.k == 4);
  CHECK(qkt.n == 2);
  CHECK(qkt.group == Group::mha);
  const auto& av = find("attn_v");
  CHECK(av.m == 2);
  CHECK(av.k == 2);
  CHECK(av.n == 4);
  CHECK(av.group == Group::mha);
  const auto& f1 = find("ffn1");
  CHECK(f1.k == 4);
  CHECK(f1.n == 8);
  const auto& f2 = find("ffn2");
  CHECK(f2.k == 8);
  CHECK(f2.n == 4);
}

TEST_CASE("extract_gemms: MAC total matches the layer-by-layer count") {
  TransformerConfig cfg;
  cfg.model_name = "deit-t";
  cfg.layers = 12;
  cfg.hidden_dim = 192;
  cfg.heads = 3;
  cfg.ffn_dim = 768;
  cfg.seq_len = 197;
  const auto graph = extract_gemms(cfg);
  CHECK(graph.total_macs() ==
        oracles::transformer_macs(12, 192, 3, 768, 197));
}

TEST_CASE("extract_gemms: MHA group holds 2 * heads * layers instances") {
  TransformerConfig cfg;
  cfg.model_name = "x";
  cfg.layers = 5;
  cfg.hidden_dim = 96;
  cfg.heads = 4;
  cfg.ffn_dim = 384;
  cfg.seq_len = 33;
  const auto graph = extract_gemms(cfg);
  CHECK(graph.gemm_instances(Group::mha) == 2 * 4 * 5);
}

TEST_CASE("extract_gemms: operand dynamism tags are consistent") {
  TransformerConfig cfg;
  cfg.model_name = "x";
  cfg.layers = 2;
  cfg.hidden_dim = 64;
  cfg.heads = 2;
  cfg.ffn_dim = 256;
  cfg.seq_len = 16;
  for (const auto& g : extract_gemms(cfg).gemms) {
    const bool both_dynamic =
        g.operand_a_kind == OperandKind::dynamic_activation &&
        g.operand_b_kind == OperandKind::dynamic_activation;
    const bool one_static =
        (g.operand_a_kind == OperandKind::static_weight) !=
        (g.operand_b_kind == OperandKind::static_weight);
    if (g.group == Group::mha) {
      CHECK(both_dynamic);
    } else {
      CHECK(one_static);
    }
  }
}

TEST_CASE("extract_gemms: digital op element counts") {
  TransformerConfig cfg;
  cfg.model_name = "x";
  cfg.layers = 3;
  cfg.hidden_dim = 32;
  cfg.heads = 2;
  cfg.ffn_dim = 128;
  cfg.seq_len = 10;
  const auto graph = extract_gemms(cfg);
  REQUIRE(graph.digital_ops.size() == 3);
  for (const auto& op : graph.digital_ops) {
    if (op.name == "softmax") CHECK(op.total_elements() == 100 * 2 * 3);
    if (op.name == "layernorm") CHECK(op.total_elements() == 320 * 2 * 3);
    if (op.name == "gelu") CHECK(op.total_elements() == 1280 * 3);
  }
}

TEST_CASE("extract_gemms: classifier head is off by default, toggleable") {
  TransformerConfig cfg;
  cfg.model_name = "x";
  cfg.layers = 1;
  cfg.hidden_dim = 8;
  cfg.heads = 1;
  cfg.ffn_dim = 16;
  cfg.seq_len = 4;
  CHECK(extract_gemms(cfg).gemms.size() == 8);
  cfg.include_classifier = true;
  const auto graph = extract_gemms(cfg);
  CHECK(graph.gemms.size() == 9);
  CHECK(graph.gemms.back().name == "classifier");
}

TEST_CASE("WorkloadGraph serializes to JSON and back") {
  TransformerConfig cfg;
  cfg.model_name = "rt";
  cfg.layers = 2;
  cfg.hidden_dim = 16;
  cfg.heads = 2;
  cfg.ffn_dim = 64;
  cfg.seq_len = 5;
  const auto graph = extract_gemms(cfg);
  const nlohmann::json j = graph;
  const auto back = j.get<WorkloadGraph>();
  CHECK(back.total_macs() == graph.total_macs());
  CHECK(nlohmann::json(back) == j);
}

TEST_CASE("TransformerConfig validation") {
  TransformerConfig cfg;
  cfg.layers = 1;
  cfg.hidden_dim = 10;
  cfg.heads = 3;  // not divisible
  cfg.ffn_dim = 8;
  cfg.seq_len = 2;
  CHECK_THROWS_AS(cfg.validate(), config_error);
}
