#include "ppxfuse/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "ppxfuse/errors.hpp"

namespace ppxfuse::io {

using nlohmann::json;

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

struct Where {
  std::string_view source;
  std::size_t line = 0;

  std::string prefix() const {
    return line == 0 ? fmt::format("{}: ", source) : fmt::format("{}:{}: ", source, line);
  }
};

struct Line {
  std::size_t number;
  std::string_view text;
};

void reject_bom(std::string_view content, std::string_view source) {
  if (content.starts_with(kBom)) throw ParseError(fmt::format("{}: UTF-8 byte order mark is not allowed", source));
}

// Non-empty lines with their 1-based numbers.
std::vector<Line> split_lines(std::string_view content, std::string_view source) {
  reject_bom(content, source);
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!content.empty()) {
    ++number;
    const auto end = content.find('\n');
    std::string_view text = content.substr(0, end);
    if (text.ends_with('\r')) text.remove_suffix(1);
    if (!text.empty()) lines.push_back({number, text});
    if (end == std::string_view::npos) break;
    content.remove_prefix(end + 1);
  }
  return lines;
}

json parse_object(std::string_view text, const Where& where) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where.prefix() + fmt::format("malformed JSON ({})", e.what()));
  }
  if (!value.is_object()) throw ParseError(where.prefix() + "expected a JSON object");
  return value;
}

const json* find(const json& object, std::string_view key) {
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

std::string required_string(const json& object, std::string_view key, const Where& where) {
  const json* v = find(object, key);
  if (v == nullptr) throw ValidationError(where.prefix() + fmt::format("missing field '{}'", key));
  if (!v->is_string()) throw ValidationError(where.prefix() + fmt::format("field '{}' must be a string", key));
  return v->get<std::string>();
}

std::string optional_string(const json& object, std::string_view key, const Where& where) {
  const json* v = find(object, key);
  if (v == nullptr || v->is_null()) return {};
  if (!v->is_string()) throw ValidationError(where.prefix() + fmt::format("field '{}' must be a string", key));
  return v->get<std::string>();
}

double required_real(const json& object, std::string_view key, const Where& where) {
  const json* v = find(object, key);
  if (v == nullptr) throw ValidationError(where.prefix() + fmt::format("missing field '{}'", key));
  if (!v->is_number()) throw ValidationError(where.prefix() + fmt::format("field '{}' must be a number", key));
  const double d = v->get<double>();
  if (!std::isfinite(d)) throw ValidationError(where.prefix() + fmt::format("field '{}' is not finite", key));
  return d;
}

std::uint64_t required_unsigned(const json& object, std::string_view key, const Where& where) {
  const json* v = find(object, key);
  if (v == nullptr) throw ValidationError(where.prefix() + fmt::format("missing field '{}'", key));
  if (!v->is_number_unsigned()) {
    throw ValidationError(where.prefix() + fmt::format("field '{}' must be a nonnegative integer", key));
  }
  return v->get<std::uint64_t>();
}

std::string quote(std::string_view s) { return quote_string(s); }

std::string real_list(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_real(values[i]);
  }
  out += ']';
  return out;
}

// Best-effort id recovery from a line that failed to parse.
std::string sniff_id(std::string_view text) {
  static const std::regex id_pattern(R"re("id"\s*:\s*"((?:[^"\\]|\\.)*)")re");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(text.begin(), text.end(), m, id_pattern)) return m[1].str();
  return {};
}

bool is_rfc3339(const std::string& text) {
  static const std::regex pattern(R"(^\d{4}-\d{2}-\d{2}[Tt ]\d{2}:\d{2}:\d{2}(\.\d+)?([Zz]|[+-]\d{2}:\d{2})$)");
  return std::regex_match(text, pattern);
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}': {}", path.string(), std::strerror(errno)));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path.string()));
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}': {}", path.string(), std::strerror(errno)));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError(fmt::format("error writing '{}': {}", path.string(), std::strerror(errno)));
}

std::string quote_string(std::string_view text) { return json(text).dump(); }

std::string format_real(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot serialize a non-finite number");
  return fmt::format("{:.17g}", value);
}

// --- corpora ---------------------------------------------------------------

std::vector<CorpusRecord> parse_corpus(std::string_view content, const LabelSpace& labels,
                                       std::string_view source_name) {
  std::vector<CorpusRecord> corpus;
  std::unordered_map<std::string, std::size_t> first_line;
  for (const auto& line : split_lines(content, source_name)) {
    const Where where{source_name, line.number};
    const json obj = parse_object(line.text, where);
    CorpusRecord record;
    record.id = required_string(obj, "id", where);
    if (record.id.empty()) throw ValidationError(where.prefix() + "empty id");
    record.text = required_string(obj, "text", where);
    record.language = required_string(obj, "language", where);
    if (record.language.empty()) throw ValidationError(where.prefix() + fmt::format("id '{}': empty language", record.id));
    record.source = required_string(obj, "source", where);
    record.sub_source = optional_string(obj, "sub_source", where);
    record.model = optional_string(obj, "model", where);
    if (const json* label = find(obj, "label"); label != nullptr && !label->is_null()) {
      if (!label->is_string()) {
        throw ValidationError(where.prefix() + fmt::format("id '{}': label must be a class name", record.id));
      }
      const auto name = label->get<std::string>();
      auto index = labels.index_of(name);
      if (!index) throw ValidationError(where.prefix() + fmt::format("id '{}': unknown label '{}'", record.id, name));
      record.label = *index;
    }
    auto [it, inserted] = first_line.emplace(record.id, line.number);
    if (!inserted) {
      throw ValidationError(fmt::format("{}: duplicate id '{}' on lines {} and {}", source_name, record.id, it->second,
                                        line.number));
    }
    corpus.push_back(std::move(record));
  }
  return corpus;
}

std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path, const LabelSpace& labels) {
  return parse_corpus(read_text(path), labels, path.string());
}

std::string format_corpus(std::span<const CorpusRecord> corpus, const LabelSpace& labels) {
  validate_corpus(corpus, labels);
  std::string out;
  for (const auto& r : corpus) {
    nlohmann::ordered_json obj;
    obj["id"] = r.id;
    obj["text"] = r.text;
    obj["language"] = r.language;
    obj["source"] = r.source;
    obj["sub_source"] = r.sub_source;
    obj["model"] = r.model;
    if (r.label) obj["label"] = labels.name(*r.label);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void write_corpus(const std::filesystem::path& path, std::span<const CorpusRecord> corpus, const LabelSpace& labels) {
  write_text(path, format_corpus(corpus, labels));
}

// --- logit bundles ----------------------------------------------------------

BundleManifest parse_manifest(std::string_view content, std::string_view source_name) {
  reject_bom(content, source_name);
  const Where where{source_name, 0};
  const json obj = parse_object(content, where);
  BundleManifest manifest;
  manifest.model_name = required_string(obj, "model_name", where);
  if (manifest.model_name.empty()) throw ManifestError(where.prefix() + "empty model_name");
  const json* order = find(obj, "label_order");
  if (order == nullptr || !order->is_array()) throw ManifestError(where.prefix() + "label_order must be an array");
  for (const auto& label : *order) {
    if (!label.is_string()) throw ManifestError(where.prefix() + "label_order entries must be strings");
    manifest.label_order.push_back(label.get<std::string>());
  }
  try {
    LabelSpace check(manifest.label_order);
  } catch (const SchemaError& e) {
    throw ManifestError(where.prefix() + e.what());
  }
  manifest.n_rows = required_unsigned(obj, "n_rows", where);
  manifest.source_checkpoint = optional_string(obj, "source_checkpoint", where);
  manifest.created_at = required_string(obj, "created_at", where);
  if (!is_rfc3339(manifest.created_at)) {
    throw ManifestError(where.prefix() + fmt::format("created_at '{}' is not an RFC 3339 timestamp", manifest.created_at));
  }
  return manifest;
}

LogitBundle parse_logits(const BundleManifest& manifest, std::string_view rows_content, std::string_view source_name) {
  LabelSpace labels = [&] {
    try {
      return LabelSpace(manifest.label_order);
    } catch (const SchemaError& e) {
      throw ManifestError(fmt::format("manifest for '{}': {}", manifest.model_name, e.what()));
    }
  }();

  std::vector<LogitRow> rows;
  std::unordered_map<std::string, std::size_t> first_line;
  for (const auto& line : split_lines(rows_content, source_name)) {
    const Where where{source_name, line.number};
    json obj;
    try {
      obj = json::parse(line.text);
    } catch (const json::parse_error&) {
      const std::string id = sniff_id(line.text);
      if (!id.empty()) throw ValidationError(where.prefix() + fmt::format("id '{}': logits are not valid numbers", id));
      throw ParseError(where.prefix() + "malformed JSON");
    }
    if (!obj.is_object()) throw ParseError(where.prefix() + "expected a JSON object");
    LogitRow row;
    row.id = required_string(obj, "id", where);
    if (row.id.empty()) throw ValidationError(where.prefix() + "empty id");
    const json* logits = find(obj, "logits");
    if (logits == nullptr || !logits->is_array()) {
      throw ValidationError(where.prefix() + fmt::format("id '{}': 'logits' must be an array", row.id));
    }
    if (logits->size() != labels.size()) {
      throw SchemaError(where.prefix() + fmt::format("id '{}': {} logits under a {}-class manifest", row.id,
                                                     logits->size(), labels.size()));
    }
    for (const auto& v : *logits) {
      if (!v.is_number()) throw ValidationError(where.prefix() + fmt::format("id '{}': non-numeric logit", row.id));
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw ValidationError(where.prefix() + fmt::format("id '{}': non-finite logit", row.id));
      row.logits.push_back(d);
    }
    auto [it, inserted] = first_line.emplace(row.id, line.number);
    if (!inserted) {
      throw ValidationError(fmt::format("{}: duplicate id '{}' on lines {} and {}", source_name, row.id, it->second,
                                        line.number));
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != manifest.n_rows) {
    throw ManifestError(fmt::format("{}: manifest for '{}' declares {} rows, found {}", source_name,
                                    manifest.model_name, manifest.n_rows, rows.size()));
  }
  return LogitBundle(manifest.model_name, std::move(labels), std::move(rows));
}

LogitBundle read_logits(const std::filesystem::path& manifest_path, const std::filesystem::path& rows_path) {
  const BundleManifest manifest = parse_manifest(read_text(manifest_path), manifest_path.string());
  return parse_logits(manifest, read_text(rows_path), rows_path.string());
}

std::string format_manifest(const BundleManifest& manifest) {
  nlohmann::ordered_json obj;
  obj["model_name"] = manifest.model_name;
  obj["label_order"] = manifest.label_order;
  obj["n_rows"] = manifest.n_rows;
  obj["source_checkpoint"] = manifest.source_checkpoint;
  obj["created_at"] = manifest.created_at;
  return obj.dump(2) + "\n";
}

std::string format_logit_rows(const LogitBundle& bundle) {
  std::string out;
  for (const auto& row : bundle.rows()) {
    out += fmt::format("{{\"id\":{},\"logits\":{}}}\n", quote(row.id), real_list(row.logits));
  }
  return out;
}

void write_logits(const LogitBundle& bundle, const std::filesystem::path& manifest_path,
                  const std::filesystem::path& rows_path, std::string_view source_checkpoint,
                  std::string_view created_at) {
  BundleManifest manifest{bundle.model_name(), bundle.label_space().labels(), bundle.size(),
                          std::string(source_checkpoint), std::string(created_at)};
  write_text(rows_path, format_logit_rows(bundle));
  write_text(manifest_path, format_manifest(manifest));
}

// --- predictions --------------------------------------------------------------

std::string format_predictions(const FusionResult& result) {
  if (result.rows.empty()) throw DomainError("cannot write an empty prediction set");
  const auto& labels = result.label_space;
  const std::string strategy = quote(to_string(result.strategy));
  std::string out;
  for (const auto& row : result.rows) {
    std::string probs = "null";
    if (row.probabilities) {
      probs = "{";
      for (std::size_t c = 0; c < labels.size(); ++c) {
        if (c > 0) probs += ',';
        probs += quote(labels.name(c)) + ":" + format_real((*row.probabilities)[c]);
      }
      probs += '}';
    }
    out += fmt::format("{{\"id\":{},\"predicted_label\":{},\"probabilities\":{},\"strategy\":{}}}\n", quote(row.id),
                       quote(labels.name(row.predicted)), probs, strategy);
  }
  return out;
}

void write_predictions(const FusionResult& result, const std::filesystem::path& path) {
  write_text(path, format_predictions(result));
}

FusionResult parse_predictions(std::string_view content, const LabelSpace& labels, std::string_view source_name) {
  FusionResult result;
  result.label_space = labels;
  std::unordered_map<std::string, std::size_t> first_line;
  bool have_strategy = false;
  for (const auto& line : split_lines(content, source_name)) {
    const Where where{source_name, line.number};
    const json obj = parse_object(line.text, where);
    FusedRow row;
    row.id = required_string(obj, "id", where);
    const std::string predicted = required_string(obj, "predicted_label", where);
    auto index = labels.index_of(predicted);
    if (!index) throw ValidationError(where.prefix() + fmt::format("id '{}': unknown label '{}'", row.id, predicted));
    row.predicted = *index;

    const Strategy strategy = parse_strategy(required_string(obj, "strategy", where));
    if (have_strategy && strategy != result.strategy) {
      throw ValidationError(where.prefix() + "mixed strategies in one predictions file");
    }
    result.strategy = strategy;
    have_strategy = true;

    const json* probs = find(obj, "probabilities");
    if (probs == nullptr) throw ValidationError(where.prefix() + "missing field 'probabilities'");
    if (!probs->is_null()) {
      if (!probs->is_object() || probs->size() != labels.size()) {
        throw SchemaError(where.prefix() + fmt::format("id '{}': probabilities must map every label", row.id));
      }
      std::vector<double> values;
      for (const auto& label : labels.labels()) values.push_back(required_real(*probs, label, where));
      row.probabilities = std::move(values);
    }
    auto [it, inserted] = first_line.emplace(row.id, line.number);
    if (!inserted) {
      throw ValidationError(fmt::format("{}: duplicate id '{}' on lines {} and {}", source_name, row.id, it->second,
                                        line.number));
    }
    result.rows.push_back(std::move(row));
  }
  if (result.rows.empty()) throw DomainError(fmt::format("{}: no predictions", source_name));
  return result;
}

FusionResult read_predictions(const std::filesystem::path& path, const LabelSpace& labels) {
  return parse_predictions(read_text(path), labels, path.string());
}

// --- weights ----------------------------------------------------------------

std::string format_weights(const WeightVector& weights) {
  std::string out = fmt::format("{{\n  \"scheme\": {},\n  \"models\": [\n", quote(to_string(weights.scheme())));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& m = weights.models()[i];
    out += fmt::format("    {{\"name\": {}", quote(m.name));
    if (m.perplexity) out += fmt::format(", \"perplexity\": {}", format_real(*m.perplexity));
    if (m.accuracy) out += fmt::format(", \"accuracy\": {}", format_real(*m.accuracy));
    out += fmt::format(", \"weight\": {}}}{}\n", format_real(m.weight), i + 1 < weights.size() ? "," : "");
  }
  out += "  ]\n}\n";
  return out;
}

WeightVector parse_weights(std::string_view content, std::string_view source_name) {
  reject_bom(content, source_name);
  const Where where{source_name, 0};
  const json obj = parse_object(content, where);
  const WeightScheme scheme = parse_weight_scheme(required_string(obj, "scheme", where));
  const json* models = find(obj, "models");
  if (models == nullptr || !models->is_array()) throw ConfigError(where.prefix() + "'models' must be an array");
  std::vector<ModelWeight> entries;
  for (const auto& m : *models) {
    if (!m.is_object()) throw ConfigError(where.prefix() + "model entries must be objects");
    ModelWeight entry;
    entry.name = required_string(m, "name", where);
    entry.weight = required_real(m, "weight", where);
    if (find(m, "perplexity") != nullptr) entry.perplexity = required_real(m, "perplexity", where);
    if (find(m, "accuracy") != nullptr) entry.accuracy = required_real(m, "accuracy", where);
    entries.push_back(std::move(entry));
  }
  try {
    return WeightVector(scheme, std::move(entries));
  } catch (const ConfigError& e) {
    throw ConfigError(where.prefix() + e.what());
  }
}

WeightVector read_weights(const std::filesystem::path& path) { return parse_weights(read_text(path), path.string()); }

void write_weights(const WeightVector& weights, const std::filesystem::path& path) {
  write_text(path, format_weights(weights));
}

// --- reports ----------------------------------------------------------------

std::string format_perplexity_reports(std::span<const PerplexityReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    out += fmt::format("{{\"model_name\":{},\"perplexity\":{},\"n_examples\":{},\"mean_nll\":{}}}\n",
                       quote(r.model_name), format_real(r.perplexity), r.n_examples, format_real(r.mean_nll));
  }
  return out;
}

std::vector<PerplexityReport> parse_perplexity_reports(std::string_view content, std::string_view source_name) {
  std::vector<PerplexityReport> reports;
  for (const auto& line : split_lines(content, source_name)) {
    const Where where{source_name, line.number};
    const json obj = parse_object(line.text, where);
    PerplexityReport r;
    r.model_name = required_string(obj, "model_name", where);
    r.perplexity = required_real(obj, "perplexity", where);
    r.n_examples = required_unsigned(obj, "n_examples", where);
    r.mean_nll = required_real(obj, "mean_nll", where);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string format_evaluation(const EvaluationReport& report) {
  std::string out = fmt::format("{{\n  \"n_examples\": {},\n  \"labels\": [", report.n_examples);
  for (std::size_t c = 0; c < report.label_space.size(); ++c) {
    out += (c > 0 ? ", " : "") + quote(report.label_space.name(c));
  }
  out += "],\n  \"confusion\": [";
  for (std::size_t g = 0; g < report.confusion.size(); ++g) {
    out += g > 0 ? ", [" : "[";
    for (std::size_t p = 0; p < report.confusion[g].size(); ++p) {
      out += fmt::format("{}{}", p > 0 ? ", " : "", report.confusion[g][p]);
    }
    out += ']';
  }
  out += "],\n  \"per_class\": [\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& s = report.per_class[c];
    out += fmt::format("    {{\"label\": {}, \"precision\": {}, \"recall\": {}, \"f1\": {}, \"support\": {}}}{}\n",
                       quote(s.label), format_real(s.precision), format_real(s.recall), format_real(s.f1), s.support,
                       c + 1 < report.per_class.size() ? "," : "");
  }
  out += fmt::format("  ],\n  \"macro_f1\": {},\n  \"micro_f1\": {},\n  \"accuracy\": {}\n}}\n",
                     format_real(report.macro_f1), format_real(report.micro_f1), format_real(report.accuracy));
  return out;
}

std::string format_evaluation_table(const EvaluationReport& report, std::string_view title) {
  std::size_t width = std::max<std::size_t>(title.size(), 5);
  for (const auto& s : report.per_class) width = std::max(width, s.label.size());
  std::string out = fmt::format("{:<{}} | {:>9} | {:>9} | {:>9} | {:>7}\n", "Class", width, "Precision", "Recall", "F1",
                                "Support");
  out += fmt::format("{:-<{}}-+-{:-<9}-+-{:-<9}-+-{:-<9}-+-{:-<7}\n", "", width, "", "", "", "");
  for (const auto& s : report.per_class) {
    out += fmt::format("{:<{}} | {:>9.4f} | {:>9.4f} | {:>9.4f} | {:>7}\n", s.label, width, s.precision, s.recall, s.f1,
                       s.support);
  }
  out += fmt::format("\n{:<{}} | {:>8} | {:>8} | {:>8}\n", "Strategy", width, "Micro F1", "Macro F1", "Accuracy");
  out += fmt::format("{:-<{}}-+-{:-<8}-+-{:-<8}-+-{:-<8}\n", "", width, "", "", "");
  out += fmt::format("{:<{}} | {:>8.4f} | {:>8.4f} | {:>8.4f}\n", title, width, report.micro_f1, report.macro_f1,
                     report.accuracy);
  return out;
}

std::string format_batch_plan(const BatchPlan& plan) {
  std::string out;
  std::size_t n_records = 0;
  for (std::size_t b = 0; b < plan.batches.size(); ++b) {
    out += fmt::format("{{\"batch\":{},\"ids\":{}}}\n", b, json(plan.batches[b]).dump());
    n_records += plan.batches[b].size();
  }
  out += fmt::format(
      "{{\"summary\":{{\"batch_size\":{},\"n_batches\":{},\"n_records\":{},\"length_metric\":\"whitespace_words\","
      "\"padding_waste\":{}}}}}\n",
      plan.batch_size, plan.batches.size(), n_records, format_real(plan.padding_waste));
  return out;
}

// --- configs ----------------------------------------------------------------

BalancePlan parse_balance_plan(std::string_view content, std::string_view source_name) {
  reject_bom(content, source_name);
  const Where where{source_name, 0};
  const json obj = parse_object(content, where);
  BalancePlan plan;
  const json* caps = find(obj, "caps");
  if (caps == nullptr || !caps->is_object()) throw ConfigError(where.prefix() + "'caps' must be an object");
  for (const auto& [lang, cap] : caps->items()) {
    if (!cap.is_number_integer()) throw ConfigError(where.prefix() + fmt::format("cap for '{}' must be an integer", lang));
    const auto value = cap.get<std::int64_t>();
    if (value <= 0) throw ConfigError(where.prefix() + fmt::format("cap for '{}' must be >= 1, got {}", lang, value));
    plan.caps.emplace(lang, value);
  }
  if (find(obj, "seed") != nullptr) plan.seed = required_unsigned(obj, "seed", where);
  return plan;
}

BalancePlan read_balance_plan(const std::filesystem::path& path) {
  return parse_balance_plan(read_text(path), path.string());
}

SimulationConfig parse_simulation_config(std::string_view content, std::string_view source_name) {
  reject_bom(content, source_name);
  const Where where{source_name, 0};
  const json obj = parse_object(content, where);
  SimulationConfig config;
  const json* models = find(obj, "models");
  if (models == nullptr || !models->is_array()) throw ConfigError(where.prefix() + "'models' must be an array");
  for (const auto& m : *models) {
    if (!m.is_object()) throw ConfigError(where.prefix() + "model entries must be objects");
    SyntheticModelSpec spec;
    spec.name = required_string(m, "name", where);
    spec.accuracy = required_real(m, "accuracy", where);
    spec.sharpness = required_real(m, "sharpness", where);
    spec.miscalibration = required_real(m, "miscalibration", where);
    config.models.push_back(std::move(spec));
  }
  if (find(obj, "n") != nullptr) config.n_examples = required_unsigned(obj, "n", where);
  if (const json* prior = find(obj, "prior"); prior != nullptr) {
    if (!prior->is_array()) throw ConfigError(where.prefix() + "'prior' must be an array");
    config.prior.clear();
    for (const auto& p : *prior) {
      if (!p.is_number()) throw ConfigError(where.prefix() + "'prior' entries must be numbers");
      config.prior.push_back(p.get<double>());
    }
  }
  if (find(obj, "seed") != nullptr) config.seed = required_unsigned(obj, "seed", where);
  return config;
}

SimulationConfig read_simulation_config(const std::filesystem::path& path) {
  return parse_simulation_config(read_text(path), path.string());
}

}  // namespace ppxfuse::io
