// Copyright 2026 The LARB Translator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// larb: command-line front end.
//
// Exit codes: 0 ok, 64 usage, 65 bad input, 69 backend unavailable,
// 70 internal error, 78 configuration error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "larb/builder/builder.hpp"
#include "larb/error.hpp"
#include "larb/eval/dataset.hpp"
#include "larb/eval/harness.hpp"
#include "larb/llm/backends.hpp"
#include "larb/pipeline/en2ovp.hpp"
#include "larb/pipeline/ovp2en.hpp"
#include "larb/service/service.hpp"
#include "larb/text/unicode.hpp"

namespace {

using namespace larb;
using nlohmann::json;

constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;
constexpr int kExitBackend = 69;
constexpr int kExitInternal = 70;
constexpr int kExitConfig = 78;

struct Options {
  std::string config_path;
  std::string backend;     // overrides the config's chat backend
  std::string embeddings;  // overrides the config's embeddings backend
};

service::ServiceConfig load_config(const Options& o) {
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("LARB_CONFIG"); env != nullptr && *env) path = env;
  }
  auto c = path.empty() ? service::ServiceConfig{} : service::ServiceConfig::load(path);
  c.apply_env();
  if (!o.backend.empty()) c.chat_backend = o.backend;
  if (!o.embeddings.empty()) c.embeddings_backend = o.embeddings;
  c.validate();
  return c;
}

grammar::Lexicon load_lexicon(const service::ServiceConfig& c) {
  return c.lexicon_path.empty() ? grammar::Lexicon::load_default()
                                : grammar::Lexicon::load(c.lexicon_path);
}

std::shared_ptr<llm::ChatBackend> chat_backend(const service::ServiceConfig& c) {
  return llm::make_chat_backend(c.chat_backend, c.chat);
}

std::shared_ptr<eval::EmbeddingBackend> embedding_backend(const service::ServiceConfig& c) {
  if (c.embeddings_backend == "none") {
    throw ConfigError("this command needs an embeddings backend (--embeddings mock|live)");
  }
  return eval::make_embedding_backend(c.embeddings_backend, c.embeddings,
                                      c.embeddings_batch_size);
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// A JSON value, a JSON array, or JSON lines.
std::vector<json> read_json_items(const std::string& path) {
  const std::string body = read_all(path);
  try {
    const json j = json::parse(body);
    return j.is_array() ? j.get<std::vector<json>>() : std::vector<json>{j};
  } catch (const json::parse_error&) {
  }
  std::vector<json> out;
  std::istringstream in(body);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw InputError(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

// --- commands --------------------------------------------------------------

void cmd_random(const Options& o, int count, std::uint64_t seed) {
  const auto c = load_config(o);
  const auto lexicon = load_lexicon(c);
  builder::SentenceBuilder b(lexicon);
  std::mt19937_64 seeds(seed);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seeds();
    const auto sel = b.random_sentence(s);
    std::cout << json{{"index", i},
                      {"seed", s},
                      {"selections", grammar::selections_to_json(sel)},
                      {"surface", grammar::render(sel, lexicon.word_order())}}
                     .dump()
              << "\n";
  }
}

void cmd_ovp2en(const Options& o, const std::string& file) {
  const auto c = load_config(o);
  const auto lexicon = load_lexicon(c);
  const auto backend = chat_backend(c);
  for (const auto& item : read_json_items(file)) {
    // Accept the bare selections or a `random` output line.
    const json& sel = item.contains("selections") ? item.at("selections") : item;
    const auto t = ovp2en::translate_ovp(grammar::selections_from_json(sel, lexicon), lexicon,
                                         *backend, {c.ti_as_past_continuous});
    std::cout << t.to_json().dump() << "\n";
  }
}

void cmd_en2ovp(const Options& o, const std::vector<std::string>& texts,
                const std::string& dataset, bool hermetic_only, bool score,
                const std::string& type, bool pretty) {
  const auto c = load_config(o);
  const auto lexicon = load_lexicon(c);
  const auto chat = chat_backend(c);
  const auto embed = score ? embedding_backend(c) : nullptr;
  en2ovp::Synonyms synonyms;
  if (!c.synonyms_path.empty()) synonyms = en2ovp::Synonyms::load(c.synonyms_path);
  const en2ovp::TranslateOptions opts{c.topic_verbs,
                                      c.synonyms_path.empty() ? nullptr : &synonyms};

  std::vector<eval::DatasetSentence> items;
  for (const auto& t : texts) items.push_back({t, type, false});
  if (!dataset.empty()) {
    for (auto& d : eval::load_dataset(dataset)) {
      if (!hermetic_only || d.hermetic) items.push_back(std::move(d));
    }
  }
  if (items.empty()) throw InputError("nothing to translate");
  if (!type.empty() && !eval::is_sentence_type(type)) {
    throw InputError("unknown sentence type '" + type + "'");
  }

  for (const auto& item : items) {
    auto record = en2ovp::translate_english(item.sentence, lexicon, *chat, opts);
    record.type = item.type;
    if (embed) record = eval::score_record(std::move(record), *embed);
    if (!pretty) {
      std::cout << record.to_json().dump() << "\n";
      continue;
    }
    std::cout << "input:      " << record.input << "\n";
    for (std::size_t i = 0; i < record.simples.size(); ++i) {
      std::cout << "simple:     " << record.simple_english[i] << "\n"
                << "comparator: " << record.comparators[i] << "\n"
                << "ovp:        " << record.ovp_surfaces[i] << "\n"
                << "backwards:  " << record.backwards[i] << "\n";
      if (!record.errors[i].empty()) std::cout << "error:      " << record.errors[i] << "\n";
    }
    if (record.scores) {
      std::cout << "scores:     simple " << record.scores->simple << ", comparator "
                << record.scores->comparator << ", backwards " << record.scores->backwards
                << "\n";
    }
    std::cout << "\n";
  }
}

eval::RankingBenchmark resolve_benchmark(const std::string& name) {
  if (name == "builtin") {
    return eval::load_benchmark(grammar::data_dir() / "ranking_benchmark.json");
  }
  return eval::load_benchmark(name);
}

void cmd_rankings(const Options& o, const std::string& benchmark_name, double p, bool as_json) {
  const auto benchmark = resolve_benchmark(benchmark_name);
  std::shared_ptr<eval::EmbeddingBackend> backend;
  if (o.embeddings == "oracle") {
    backend = std::make_shared<eval::OracleEmbeddingBackend>(benchmark);
  } else {
    auto oo = o;
    if (oo.embeddings.empty()) oo.embeddings = "mock";
    backend = embedding_backend(load_config(oo));
  }
  const auto report = eval::evaluate_embedding_model(benchmark, *backend, p);
  std::cout << (as_json ? report.to_json().dump() + "\n" : report.to_tsv());
}

void cmd_baseline(const Options& o, const std::string& dataset, std::size_t bins,
                  const std::string& histogram_path) {
  auto oo = o;
  if (oo.embeddings.empty()) oo.embeddings = "mock";
  const auto backend = embedding_backend(load_config(oo));
  std::vector<std::string> sentences;
  for (const auto& d : eval::load_dataset(dataset)) sentences.push_back(d.sentence);
  const auto stats = eval::baseline(sentences, *backend, bins);
  if (!histogram_path.empty()) {
    std::ofstream out(histogram_path);
    if (!out) throw InputError("cannot write " + histogram_path);
    out << stats.histogram_tsv();
  }
  auto j = stats.to_json();
  if (!histogram_path.empty()) j.erase("histogram");
  std::cout << j.dump() << "\n";
}

void cmd_by_type(const std::string& records_path, const std::string& reference) {
  std::vector<en2ovp::TranslationRecord> records;
  for (const auto& j : read_json_items(records_path)) {
    records.push_back(en2ovp::TranslationRecord::from_json(j));
  }
  if (records.empty()) throw InputError("no records in " + records_path);
  const auto report = eval::summarize_by_type(records);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (reference.empty()) {
    std::cout << report.to_tsv();
    return;
  }
  // Append the reference mean for (model, type) when the reference has it.
  std::map<std::pair<std::string, std::string>, std::string> ref;
  std::istringstream in(read_all(reference));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#' || line.rfind("model\t", 0) == 0) continue;
    const auto a = line.find('\t');
    const auto b = line.find('\t', a + 1);
    if (a == std::string::npos || b == std::string::npos) continue;
    ref[{line.substr(0, a), line.substr(a + 1, b - a - 1)}] = line.substr(b + 1);
  }
  std::istringstream rows(report.to_tsv());
  std::string line;
  std::getline(rows, line);
  std::cout << line << "\treference\n";
  for (const auto& r : report.rows) {
    std::getline(rows, line);
    const auto it = ref.find({r.model, r.type});
    std::cout << line << "\t" << (it == ref.end() ? "" : it->second) << "\n";
  }
}

service::Service* g_service = nullptr;

void cmd_serve(const Options& o, const std::string& host, int port) {
  auto c = load_config(o);
  if (!host.empty()) c.host = host;
  if (port >= 0) c.port = port;
  c.validate();
  service::Service svc(c);
  g_service = &svc;
  std::signal(SIGINT, [](int) {
    if (g_service) g_service->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_service) g_service->stop();
  });
  if (!svc.run()) {
    g_service = nullptr;
    throw ConfigError("cannot listen on " + c.host + ":" + std::to_string(c.port));
  }
  g_service = nullptr;
}

// Numbered-choice sentence building on the terminal.
void cmd_build(const Options& o) {
  const auto c = load_config(o);
  const auto lexicon = load_lexicon(c);
  builder::SentenceBuilder b(lexicon);
  grammar::SentenceSelections sel;
  while (true) {
    const auto verdict = grammar::validate(sel);
    std::vector<builder::SlotChoices> open;
    for (auto& sc : b.valid_choices(sel)) {
      if (!sc.locked_reason && !sc.choices.empty() && !sel.get(sc.slot)) open.push_back(sc);
    }
    if (verdict.complete()) std::cerr << "sentence: " << grammar::render(sel, lexicon.word_order()) << "\n";
    if (open.empty()) break;
    std::cerr << "slots:";
    for (std::size_t i = 0; i < open.size(); ++i) {
      std::cerr << "  " << i + 1 << ") " << grammar::to_string(open[i].slot)
                << (open[i].required ? "*" : "");
    }
    std::cerr << (verdict.complete() ? "  0) done" : "") << "\n> ";
    std::size_t pick = 0;
    if (!(std::cin >> pick)) return;
    if (pick == 0 && verdict.complete()) break;
    if (pick < 1 || pick > open.size()) continue;
    const auto& slot = open[pick - 1];
    for (std::size_t i = 0; i < slot.choices.size(); ++i) {
      std::cerr << "  " << i + 1 << ") " << slot.choices[i]->surface << "  ("
                << slot.choices[i]->gloss << ")\n";
    }
    std::cerr << "> ";
    std::size_t k = 0;
    if (!(std::cin >> k)) return;
    if (k < 1 || k > slot.choices.size()) continue;
    sel = b.apply_choice(sel, slot.slot, *slot.choices[k - 1]).selections;
  }
  if (grammar::validate(sel).complete()) {
    std::cout << json{{"selections", grammar::selections_to_json(sel)},
                      {"surface", grammar::render(sel, lexicon.word_order())}}
                     .dump()
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Owens Valley Paiute rule-based translator with LLM assistance"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--config", opts.config_path, "service/backends config (JSON); else $LARB_CONFIG");
  app.add_option("--backend", opts.backend, "chat backend")->check(CLI::IsMember({"mock", "live"}));
  app.add_option("--embeddings", opts.embeddings, "embeddings backend")
      ->check(CLI::IsMember({"none", "mock", "live", "oracle"}));

  int count = 1;
  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random", "print random valid OVP sentences");
  random->add_option("--count", count)->check(CLI::NonNegativeNumber);
  random->add_option("--seed", seed);

  std::string selections_file;
  auto* ovp2en = app.add_subcommand("ovp2en", "translate built OVP sentences to English");
  ovp2en->add_option("--selections", selections_file, "JSON selections, array or lines; - for stdin")
      ->required();

  std::vector<std::string> texts;
  std::string dataset, type;
  bool hermetic = false, score = false, pretty = false;
  auto* en2ovp = app.add_subcommand("en2ovp", "translate English to OVP");
  en2ovp->add_option("text", texts, "English input");
  en2ovp->add_option("--dataset", dataset, "sentence file (TSV with header or plain lines)");
  en2ovp->add_flag("--hermetic", hermetic, "with --dataset: only rows marked hermetic");
  en2ovp->add_flag("--score", score, "score with the embeddings backend");
  en2ovp->add_option("--type", type, "sentence type tag for the records");
  en2ovp->add_flag("--pretty", pretty, "human-readable blocks instead of JSON lines");

  auto* eval_cmd = app.add_subcommand("eval", "embedding-model evaluation");
  eval_cmd->require_subcommand(1);
  eval_cmd->fallthrough();
  std::string benchmark;
  double p = eval::kDefaultRboP;
  bool as_json = false;
  auto* rankings = eval_cmd->add_subcommand("rankings", "ranking benchmark: displacement and RBO per model");
  rankings->add_option("--benchmark", benchmark, "benchmark JSON or 'builtin'")->required();
  rankings->add_option("--p", p, "RBO persistence")->check(CLI::Range(0.0, 1.0));
  rankings->add_flag("--json", as_json, "full JSON report");
  std::string baseline_dataset, histogram;
  std::size_t bins = 20;
  auto* baseline = eval_cmd->add_subcommand("baseline", "similarity over all sentence pairs");
  baseline->add_option("--dataset", baseline_dataset)->required();
  baseline->add_option("--bins", bins)->check(CLI::PositiveNumber);
  baseline->add_option("--histogram", histogram, "write bin-edge/count TSV here");

  auto* report = app.add_subcommand("report", "reports over translation records");
  report->require_subcommand(1);
  report->fallthrough();
  std::string records_file, reference;
  auto* by_type = report->add_subcommand("by-type", "mean scores per model and sentence type");
  by_type->add_option("--records", records_file, "JSON-lines records")->required();
  by_type->add_option("--reference", reference, "model/type/mean TSV to show alongside");

  std::string host;
  int port = -1;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  auto* build = app.add_subcommand("build", "build one sentence with numbered choices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*random) {
      cmd_random(opts, count, seed);
    } else if (*ovp2en) {
      cmd_ovp2en(opts, selections_file);
    } else if (*en2ovp) {
      if (texts.empty() && dataset.empty()) {
        std::cerr << "en2ovp: give TEXT or --dataset\n";
        return kExitUsage;
      }
      cmd_en2ovp(opts, texts, dataset, hermetic, score, type, pretty);
    } else if (*rankings) {
      cmd_rankings(opts, benchmark, p, as_json);
    } else if (*baseline) {
      cmd_baseline(opts, baseline_dataset, bins, histogram);
    } else if (*by_type) {
      cmd_by_type(records_file, reference);
    } else if (*serve) {
      cmd_serve(opts, host, port);
    } else if (*build) {
      cmd_build(opts);
    }
  } catch (const ConfigError& e) {
    std::cerr << "larb: configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TransportError& e) {
    std::cerr << "larb: backend unreachable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const BackendError& e) {
    std::cerr << "larb: backend: " << e.what() << "\n";
    return kExitBackend;
  } catch (const FormatError& e) {
    std::cerr << "larb: unusable model reply: " << e.what() << "\n";
    return kExitBackend;
  } catch (const SegmentationError& e) {
    std::cerr << "larb: segmentation failed: " << e.what() << "\n";
    return kExitBackend;
  } catch (const larb::Error& e) {
    std::cerr << "larb: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "larb: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  std::cout.flush();
  return std::cout ? 0 : kExitInternal;
}
