#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <string>

#include <fmt/format.h>
#include <unistd.h>

#include "ppxfuse/errors.hpp"
#include "ppxfuse/io.hpp"

using namespace ppxfuse;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

const std::string kManifest = R"({"model_name": "m1", "label_order": ["human", "machine"], "n_rows": 2,
 "source_checkpoint": "ckpt/m1", "created_at": "2024-11-02T10:00:00Z"})";

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / fs::path("ppxfuse-io-" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("corpus: optional fields may be missing") {
  const auto corpus = io::parse_corpus(
      "{\"id\":\"a\",\"text\":\"hello world\",\"language\":\"en\",\"source\":\"wiki\",\"label\":\"machine\"}\n"
      "{\"id\":\"b\",\"text\":\"x\",\"language\":\"zh\",\"source\":\"web\",\"sub_source\":\"qa\",\"model\":\"gpt\","
      "\"label\":null}\n",
      LabelSpace::binary());
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].label == 1u);
  CHECK(corpus[0].sub_source.empty());
  CHECK_FALSE(corpus[1].label.has_value());
  CHECK(corpus[1].sub_source == "qa");
  CHECK(corpus[1].model == "gpt");
}

TEST_CASE("corpus: a labeled line") {
  const auto corpus = io::parse_corpus(
      R"({"id":"1","text":"hi","language":"en","source":"s","label":"human"})", LabelSpace::binary());
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].label == 0u);
  CHECK(corpus[0].model.empty());
}

TEST_CASE("corpus: duplicate ids name both lines") {
  std::string content;
  for (const char* id : {"u", "v", "x", "w", "y", "z", "x"}) {
    content += fmt::format(R"({{"id":"{}","text":"t","language":"en","source":"s"}})", id) + "\n";
  }
  CHECK_THROWS_AS(io::parse_corpus(content, LabelSpace::binary()), ValidationError);
  const auto msg = message_of([&] { io::parse_corpus(content, LabelSpace::binary(), "train.jsonl"); });
  CHECK(msg.find("duplicate id 'x' on lines 3 and 7") != std::string::npos);
  CHECK(msg.find("train.jsonl") != std::string::npos);
}

TEST_CASE("corpus: malformed input") {
  const auto labels = LabelSpace::binary();
  CHECK_THROWS_AS(io::parse_corpus("{\"id\":\"a\",\"text\":\"t\",\"language\":\"en\"}\n", labels), ValidationError);
  CHECK_THROWS_AS(io::parse_corpus("{\"id\":\"a\",\n", labels), ParseError);
  CHECK_THROWS_AS(
      io::parse_corpus("{\"id\":\"a\",\"text\":\"t\",\"language\":\"en\",\"source\":\"s\",\"label\":\"bot\"}\n", labels),
      ValidationError);
  CHECK_THROWS_AS(io::parse_corpus("\xEF\xBB\xBF{\"id\":\"a\",\"text\":\"t\",\"language\":\"en\",\"source\":\"s\"}\n",
                                   labels),
                  ParseError);
  const auto msg = message_of([&] { io::parse_corpus("\n\n[1]\n", labels, "c.jsonl"); });
  CHECK(msg.find("c.jsonl:3:") != std::string::npos);
}

TEST_CASE("corpus round trip") {
  const std::vector<CorpusRecord> corpus{{"a", "line \"one\"\nnext", "en", "s", "sub", "m", 0},
                                         {"b", "\xE4\xBD\xA0\xE5\xA5\xBD", "zh", "s", "", "", std::nullopt}};
  const auto text = io::format_corpus(corpus, LabelSpace::binary());
  CHECK(io::parse_corpus(text, LabelSpace::binary()) == corpus);
  CHECK(io::format_corpus(io::parse_corpus(text, LabelSpace::binary()), LabelSpace::binary()) == text);
}

TEST_CASE("logits: manifest and rows parse into a bundle") {
  const auto manifest = io::parse_manifest(kManifest);
  CHECK(manifest.model_name == "m1");
  CHECK(manifest.label_order == std::vector<std::string>{"human", "machine"});
  const auto bundle = io::parse_logits(manifest, "{\"id\":\"a\",\"logits\":[0.5,-1]}\n{\"id\":\"b\",\"logits\":[2,3e-2]}\n");
  CHECK(bundle.model_name() == "m1");
  CHECK(bundle.rows()[1].logits == std::vector<double>{2.0, 0.03});
}

TEST_CASE("logits: row and manifest errors") {
  const auto manifest = io::parse_manifest(kManifest);
  SUBCASE("wrong logit count") {
    CHECK_THROWS_AS(io::parse_logits(manifest, "{\"id\":\"a\",\"logits\":[1,2,3]}\n{\"id\":\"b\",\"logits\":[1,2]}\n"),
                    SchemaError);
  }
  SUBCASE("non-numeric logit names the id") {
    const auto msg = message_of(
        [&] { io::parse_logits(manifest, "{\"id\":\"a\",\"logits\":[1,2]}\n{\"id\":\"b7\",\"logits\":[1,\"x\"]}\n"); });
    CHECK(msg.find("b7") != std::string::npos);
    CHECK_THROWS_AS(io::parse_logits(manifest, "{\"id\":\"a\",\"logits\":[1,2]}\n{\"id\":\"b\",\"logits\":[1,NaN]}\n"),
                    ValidationError);
  }
  SUBCASE("row count must match the manifest") {
    CHECK_THROWS_AS(io::parse_logits(manifest, "{\"id\":\"a\",\"logits\":[1,2]}\n"), ManifestError);
  }
  SUBCASE("bad manifests") {
    CHECK_THROWS_AS(io::parse_manifest(R"({"model_name": "m", "label_order": ["human", "machine"], "n_rows": 1,
      "source_checkpoint": "c", "created_at": "yesterday"})"),
                    ManifestError);
    CHECK_THROWS_AS(io::parse_manifest(R"({"model_name": "m", "label_order": ["human"], "n_rows": 1,
      "source_checkpoint": "c", "created_at": "2024-01-01T00:00:00Z"})"),
                    ManifestError);
    CHECK_THROWS_AS(io::parse_manifest(R"({"model_name": "m", "n_rows": 1})"), InputError);
  }
}

TEST_CASE("logits: file round trip is exact") {
  TempDir dir;
  const LogitBundle bundle("m2", LabelSpace::binary(),
                           {{"r1", {0.1, -1.0 / 3.0}}, {"r2", {1e-300, 123456.789}}, {"r3", {-0.0, 5e300}}});
  const auto manifest_path = dir.path / "m2.manifest.json";
  const auto rows_path = dir.path / "m2.logits.jsonl";
  io::write_logits(bundle, manifest_path, rows_path, "ckpt/m2");
  CHECK(io::read_logits(manifest_path, rows_path) == bundle);
  const auto manifest = io::parse_manifest(io::read_text(manifest_path));
  CHECK(manifest.created_at == io::kEpochTimestamp);
  CHECK(manifest.n_rows == 3);
  CHECK_THROWS_AS(io::read_logits(dir.path / "missing.json", rows_path), IoError);
}

TEST_CASE("predictions: soft and majority formats") {
  FusionResult soft;
  soft.strategy = Strategy::weighted_soft;
  soft.rows = {{"a", std::vector<double>{0.25, 0.75}, 1}, {"b", std::vector<double>{0.5, 0.5}, 0}};
  const auto text = io::format_predictions(soft);
  CHECK(text.find("\"predicted_label\":\"machine\"") != std::string::npos);
  const auto parsed = io::parse_predictions(text, LabelSpace::binary());
  CHECK(parsed.rows == soft.rows);
  CHECK(parsed.strategy == Strategy::weighted_soft);

  FusionResult majority;
  majority.strategy = Strategy::majority;
  majority.rows = {{"a", std::nullopt, 1}};
  const auto mtext = io::format_predictions(majority);
  CHECK(mtext.find("\"probabilities\":null") != std::string::npos);
  CHECK(io::parse_predictions(mtext, LabelSpace::binary()).rows == majority.rows);

  CHECK_THROWS_AS(io::format_predictions(FusionResult{}), DomainError);
}

TEST_CASE("weights round trip and validation") {
  const WeightVector w(WeightScheme::inverse_perplexity,
                       {{"a", 4.0 / 7.0, 1.5, std::nullopt}, {"b", 2.0 / 7.0, 2.0, std::nullopt},
                        {"c", 1.0 / 7.0, 3.0, std::nullopt}});
  CHECK(io::parse_weights(io::format_weights(w)) == w);
  CHECK_THROWS_AS(io::parse_weights(R"({"scheme": "accuracy", "models": [{"name": "a", "weight": 0.6},
    {"name": "b", "weight": 0.6}]})"),
                  ConfigError);
  CHECK_THROWS_AS(io::parse_weights(R"({"scheme": "bogus", "models": [{"name": "a", "weight": 1}]})"), ConfigError);
}

TEST_CASE("perplexity reports round trip") {
  const std::vector<PerplexityReport> reports{{"a", 1.25, 10, std::log(1.25)}, {"b", 2.0, 10, std::log(2.0)}};
  const auto text = io::format_perplexity_reports(reports);
  const auto back = io::parse_perplexity_reports(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].model_name == "a");
  CHECK(back[0].perplexity == 1.25);
  CHECK(back[1].mean_nll == std::log(2.0));
}

TEST_CASE("configs") {
  const auto plan = io::parse_balance_plan(R"({"caps": {"en": 10, "zh": 5}})");
  CHECK(plan.caps.at("en") == 10);
  CHECK(plan.seed == 42);
  CHECK(io::parse_balance_plan(R"({"caps": {}, "seed": 9})").seed == 9);
  CHECK_THROWS_AS(io::parse_balance_plan(R"({"caps": {"en": 0}})"), ConfigError);
  CHECK_THROWS_AS(io::parse_balance_plan(R"({"seed": 1})"), ConfigError);

  const auto sim = io::parse_simulation_config(
      R"({"models": [{"name": "A", "accuracy": 0.9, "sharpness": 4, "miscalibration": 0}], "n": 50, "seed": 3})");
  REQUIRE(sim.models.size() == 1);
  CHECK(sim.models[0].accuracy == 0.9);
  CHECK(sim.n_examples == 50);
  CHECK(sim.prior == std::vector<double>{0.5, 0.5});
  CHECK_THROWS_AS(io::parse_simulation_config(R"({"n": 5})"), ConfigError);
}

TEST_CASE("format_real keeps 17 significant digits and rejects non-finite values") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::format_real(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS_AS(io::format_real(std::nan("")), DomainError);
}
