#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "larb/error.hpp"
#include "larb/eval/dataset.hpp"
#include "larb/eval/harness.hpp"
#include "larb/llm/backends.hpp"
#include "support/fake_server.hpp"
#include "support/rbo_oracle.hpp"
#include "support/fixtures.hpp"

using namespace larb;
using namespace larb::eval;
using larb::testing::all_rankings;
using larb::testing::FakeServer;
using larb::testing::Ranking;
using larb::testing::rbo_oracle;

namespace {

Ranking letters(const std::string& s) {
  Ranking out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

const RankingBenchmark& ranking_benchmark() {
  static const RankingBenchmark b = load_benchmark(larb::testing::data_dir() / "ranking_benchmark.json");
  return b;
}

llm::BackendConfig live_config(const std::string& url) {
  llm::BackendConfig c;
  c.base_url = url;
  c.model_name = "test-embed";
  c.api_key_env = "LARB_TEST_FAKE_KEY";
  c.timeout_s = 2;
  c.max_retries = 1;
  c.backoff_initial_s = 0.01;
  return c;
}

}  // namespace

TEST_CASE("normalized cosine") {
  const std::vector<double> v{0.3, -1.7, 2.2, 0.01};
  std::vector<double> neg, twice;
  for (double x : v) {
    neg.push_back(-x);
    twice.push_back(2 * x);
  }
  CHECK(normalized_cosine(v, v) == 1.0);
  CHECK(normalized_cosine(v, neg) == 0.0);
  CHECK(normalized_cosine(std::vector<double>{1, 0, 0}, std::vector<double>{0, 3, 0}) == 0.5);
  const std::vector<double> u{1, 2, 3, 4};
  CHECK(normalized_cosine(u, v) == normalized_cosine(v, u));
  CHECK(normalized_cosine(twice, u) == doctest::Approx(normalized_cosine(v, u)).epsilon(1e-15));
  CHECK_THROWS_AS(normalized_cosine(std::vector<double>{0, 0}, std::vector<double>{1, 0}),
                  DegenerateInputError);
  CHECK_THROWS_AS(normalized_cosine(std::vector<double>{1}, std::vector<double>{1, 0}),
                  InputError);
}

TEST_CASE("average displacement") {
  const auto ten = letters("abcdefghij");
  auto rev = ten;
  std::reverse(rev.begin(), rev.end());
  auto swap = ten;
  std::swap(swap[3], swap[4]);
  CHECK(average_displacement(ten, ten) == 0.0);
  CHECK(average_displacement(ten, rev) == 5.0);
  CHECK(average_displacement(ten, swap) == doctest::Approx(0.2).epsilon(1e-15));
  // Relabeling elements leaves the value unchanged.
  CHECK(average_displacement(letters("KLMNOPQRST"), letters("TSRQPONMLK")) == 5.0);
  CHECK_THROWS_AS(average_displacement(letters("abc"), letters("abd")), InputError);
  CHECK_THROWS_AS(average_displacement(letters("abc"), letters("ab")), InputError);
  CHECK_THROWS_AS(average_displacement(letters("aab"), letters("aba")), InputError);
}

TEST_CASE("rbo matches the depth-sum oracle on every ranking pair up to length 5") {
  const auto rankings = all_rankings("abcde", 5);
  REQUIRE(rankings.size() == 325);
  for (double p : {0.5, 0.9, 0.98}) {
    double worst = 0;
    for (const auto& a : rankings) {
      for (const auto& b : rankings) {
        const double got = rbo(a, b, p);
        worst = std::max(worst, std::abs(got - rbo_oracle(a, b, p)));
        if (worst > 1e-12) {
          CAPTURE(p);
          FAIL("rbo disagrees with the oracle");
        }
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("rbo on disjoint and partially overlapping lists") {
  for (const auto& a : all_rankings("abc", 3)) {
    for (const auto& b : all_rankings("vwxyz", 4)) {
      CHECK(rbo(a, b, 0.9) == 0.0);
      CHECK(std::abs(rbo(a, b, 0.9) - rbo_oracle(a, b, 0.9)) <= 1e-12);
    }
  }
  const auto a = letters("abcdefg");
  CHECK(std::abs(rbo(a, letters("axbycz"), 0.9) - rbo_oracle(a, letters("axbycz"), 0.9)) <= 1e-12);
}

TEST_CASE("rbo worked values and properties") {
  const auto abc = letters("abc");
  CHECK(rbo(abc, abc) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rbo(abc, letters("acb"), 0.9) == doctest::Approx(0.955).epsilon(1e-12));
  CHECK(rbo(abc, letters("acb"), 0.9) == rbo(letters("acb"), abc, 0.9));
  CHECK(rbo({}, {}) == 1.0);
  CHECK(rbo(abc, {}) == 0.0);

  // Agreeing on a longer prefix never lowers the score.
  const auto target = letters("abcdefgh");
  for (double p : {0.5, 0.9, 0.98}) {
    double prev = -1;
    for (std::size_t k = 0; k <= target.size(); ++k) {
      Ranking other(target.begin(), target.begin() + static_cast<long>(k));
      Ranking rest(target.begin() + static_cast<long>(k), target.end());
      std::reverse(rest.begin(), rest.end());
      other.insert(other.end(), rest.begin(), rest.end());
      const double r = rbo(target, other, p);
      CHECK(r >= prev - 1e-15);
      prev = r;
    }
  }
  CHECK_THROWS_AS(rbo(abc, abc, 0.0), ParameterError);
  CHECK_THROWS_AS(rbo(abc, abc, 1.0), ParameterError);
  CHECK_THROWS_AS(rbo(abc, abc, -0.2), ParameterError);
  CHECK_THROWS_AS(rbo(letters("aa"), abc), InputError);
}

TEST_CASE("mean and population std") {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  const auto ms = mean_std(xs);
  CHECK(ms.mean == 5.0);
  CHECK(ms.std == 2.0);
}

TEST_CASE("mock embeddings") {
  MockEmbeddingBackend mock;
  const auto v = embed({"She sings.", "She sings.", "Mountains echo silently.", ""}, mock);
  REQUIRE(v.size() == 4);
  CHECK(v[0].values == v[1].values);
  for (const auto& e : v) {
    CHECK(e.values.size() == MockEmbeddingBackend::kDimensions);
    CHECK(e.model_name == "mock-hash-384");
  }
  CHECK(normalized_cosine(v[0].values, v[1].values) == 1.0);
  const double far = normalized_cosine(v[0].values, v[2].values);
  CHECK(far >= 0.0);
  CHECK(far <= 1.0);
  CHECK(normalized_cosine(v[0].values, MockEmbeddingBackend::vectorize("He sings.")) > far);
  CHECK_THROWS_AS(embed({}, mock), InputError);
}

TEST_CASE("the shipped ranking benchmark") {
  const auto& b = ranking_benchmark();
  CHECK(b.cases.size() == 12);
  for (const auto& c : b.cases) CHECK(c.candidates.size() == 10);
  CHECK(b.cases[0].base == "She sings.");
  CHECK(b.cases[0].candidates.back() == "Mountains echo silently.");

  CHECK_THROWS_AS(benchmark_from_json(nlohmann::json::parse(
                      R"({"cases":[{"base":"x","candidates":["y"]}]})")),
                  InputError);
  CHECK_THROWS_AS(benchmark_from_json(nlohmann::json::parse(
                      R"({"cases":[{"base":"x","candidates":["y","y"]}]})")),
                  InputError);
  CHECK_THROWS_AS(benchmark_from_json(nlohmann::json::parse(R"({"cases":[]})")), InputError);
  CHECK_THROWS_AS(load_benchmark("/nonexistent.json"), InputError);
}

TEST_CASE("oracle embeddings reproduce the ground truth exactly") {
  OracleEmbeddingBackend oracle(ranking_benchmark());
  const auto report = evaluate_embedding_model(ranking_benchmark(), oracle);
  CHECK(report.model_name == "oracle");
  CHECK(report.displacement.mean == 0.0);
  CHECK(report.displacement.std == 0.0);
  CHECK(report.rbo.mean == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& c : report.cases) CHECK(c.displacement == 0.0);
}

TEST_CASE("rankings, not raw scores, determine the report") {
  MockEmbeddingBackend mock;
  const auto raw = evaluate_embedding_model(ranking_benchmark(), mock);
  CHECK(std::isfinite(raw.displacement.mean));
  CHECK(std::isfinite(raw.rbo.mean));
  CHECK(raw.rbo.mean >= 0.0);
  CHECK(raw.rbo.mean <= 1.0);
  CHECK(raw.cases.size() == 12);

  auto scorer = [&](const std::string& base, const std::vector<std::string>& cands) {
    std::vector<double> s;
    const auto vb = MockEmbeddingBackend::vectorize(base);
    for (const auto& c : cands) s.push_back(normalized_cosine(vb, MockEmbeddingBackend::vectorize(c)));
    return s;
  };
  const auto direct = evaluate_rankings(ranking_benchmark(), scorer);
  const auto warped = evaluate_rankings(ranking_benchmark(), [&](const auto& b, const auto& c) {
    auto s = scorer(b, c);
    for (double& x : s) x = std::exp(7 * x) - 3;
    return s;
  });
  CHECK(direct.to_json()["cases"] == raw.to_json()["cases"]);
  CHECK(warped.to_json()["cases"] == direct.to_json()["cases"]);
  CHECK(warped.rbo.mean == direct.rbo.mean);
  CHECK(warped.displacement.mean == direct.displacement.mean);
}

TEST_CASE("tied scores keep candidate order") {
  const auto flat = evaluate_rankings(ranking_benchmark(), [](const auto&, const auto& c) {
    return std::vector<double>(c.size(), 0.5);
  });
  CHECK(flat.displacement.mean == 0.0);
  const auto inverted = evaluate_rankings(ranking_benchmark(), [](const auto&, const auto& c) {
    std::vector<double> s;
    for (std::size_t i = 0; i < c.size(); ++i) s.push_back(static_cast<double>(i));
    return s;
  });
  CHECK(inverted.displacement.mean == 5.0);
  CHECK_THROWS_AS(evaluate_rankings(ranking_benchmark(), [](const auto&, const auto&) {
                    return std::vector<double>{1.0};
                  }),
                  InputError);
  const auto tsv = inverted.to_tsv();
  CHECK(tsv.rfind("model\tdisplacement_mean", 0) == 0);
}

TEST_CASE("baseline statistics") {
  MockEmbeddingBackend mock;
  const auto same = baseline({"The dog barked.", "The dog barked."}, mock);
  CHECK(same.mean == 1.0);
  CHECK(same.std == 0.0);
  CHECK(same.pairs == 1);
  CHECK(same.histogram.back().count == 1);

  std::vector<std::string> corpus;
  for (const auto& d : load_dataset(larb::testing::data_dir() / "english_sentences.tsv")) {
    corpus.push_back(d.sentence);
  }
  REQUIRE(corpus.size() == 125);
  const auto stats = baseline(corpus, mock, 10);
  CHECK(stats.pairs == 125 * 124 / 2);
  std::size_t total = 0;
  for (const auto& b : stats.histogram) total += b.count;
  CHECK(total == stats.pairs);
  CHECK(stats.histogram.size() == 10);
  CHECK(stats.histogram[3].lo == doctest::Approx(0.3));
  CHECK(stats.mean > 0.0);
  CHECK(stats.mean < 1.0);
  CHECK(stats.threshold() == doctest::Approx(stats.mean + 3 * stats.std));
  CHECK(stats.histogram_tsv().rfind("lo\thi\tcount\n", 0) == 0);
  CHECK(stats.to_json()["threshold"].get<double>() == doctest::Approx(stats.threshold()));

  CHECK_THROWS_AS(baseline({"one"}, mock), InputError);
}

TEST_CASE("set similarity and record scoring") {
  MockEmbeddingBackend embed_mock;
  llm::MockChatBackend chat;
  CHECK(sentence_set_similarity("I am swimming.", {"I am swimming."}, embed_mock) == 1.0);
  const double s = sentence_set_similarity("Birds will migrate and return.",
                                           {"A bird will migrate.", "The bird will return."},
                                           embed_mock);
  CHECK(s >= 0.0);
  CHECK(s <= 1.0);
  CHECK_THROWS_AS(sentence_set_similarity("x", {}, embed_mock), InputError);

  const auto& lex = larb::testing::lexicon();
  const auto swim = score_record(en2ovp::translate_english("I am swimming.", lex, chat), embed_mock);
  REQUIRE(swim.scores);
  CHECK(*swim.scores == en2ovp::Scores{1.0, 1.0, 1.0});
  CHECK(swim.embedding_model == "mock-hash-384");

  const auto cook = score_record(en2ovp::translate_english("She is cooking.", lex, chat), embed_mock);
  CHECK(cook.scores->simple == 1.0);
  CHECK(cook.scores->comparator == 1.0);
  CHECK(cook.scores->backwards < 1.0);

  const auto birds =
      score_record(en2ovp::translate_english("Birds will migrate and return.", lex, chat), embed_mock);
  CHECK(birds.scores->comparator < birds.scores->simple);

  en2ovp::TranslationRecord failed = en2ovp::translate_english("I am swimming.", lex, chat);
  failed.backwards = {""};
  failed.errors = {"backend returned HTTP 503: down"};
  CHECK_THROWS_AS(score_record(failed, embed_mock), InputError);
}

TEST_CASE("summaries by model and sentence type") {
  auto rec = [](std::string model, std::string type, double a, double b, double c) {
    en2ovp::TranslationRecord r;
    r.model_name = std::move(model);
    r.type = std::move(type);
    r.scores = en2ovp::Scores{a, b, c};
    return r;
  };
  std::vector<en2ovp::TranslationRecord> perfect;
  for (auto t : kSentenceTypes) perfect.push_back(rec("m", std::string(t), 1, 1, 1));
  const auto all = summarize_by_type(perfect);
  CHECK(all.rows.size() == 5);
  CHECK(all.warnings.empty());
  for (const auto& r : all.rows) CHECK(r.mean == 1.0);

  const auto some = summarize_by_type({rec("gpt-4", "two-verb", 0.9, 0.6, 0.9),
                                       rec("gpt-4", "two-verb", 0.7, 0.6, 0.5),
                                       rec("gpt-3.5-turbo", "complex", 1, 1, 1)});
  REQUIRE(some.rows.size() == 2);
  CHECK(some.rows[0].model == "gpt-4");
  CHECK(some.rows[0].records == 2);
  CHECK(some.rows[0].simple == doctest::Approx(0.8));
  CHECK(some.rows[0].mean == doctest::Approx(0.7));
  CHECK(some.warnings.size() == 8);
  CHECK(some.to_tsv().find("gpt-4\ttwo-verb\t2\t0.8000\t0.6000\t0.7000\t0.7000\n") !=
        std::string::npos);

  CHECK_THROWS_AS(summarize_by_type({rec("m", "haiku", 1, 1, 1)}), InputError);
  auto unscored = rec("m", "complex", 1, 1, 1);
  unscored.scores.reset();
  CHECK_THROWS_AS(summarize_by_type({unscored}), InputError);
}

TEST_CASE("HTTP embeddings: batching, ordering and auth") {
  ::setenv("LARB_TEST_FAKE_KEY", "sk-embed", 1);
  FakeServer server([](const httplib::Request& req, httplib::Response& res, int) {
    CHECK(req.path == "/v1/embeddings");
    const auto body = nlohmann::json::parse(req.body);
    CHECK(body["model"] == "test-embed");
    nlohmann::json data = nlohmann::json::array();
    const auto& input = body["input"];
    // Reply in reverse order; the client must sort by index.
    for (std::size_t i = input.size(); i-- > 0;) {
      const double len = static_cast<double>(input[i].get<std::string>().size());
      data.push_back({{"index", i}, {"embedding", {len, 1.0}}});
    }
    res.set_content(nlohmann::json{{"data", data}}.dump(), "application/json");
  });
  HttpEmbeddingBackend backend(live_config(server.url()), 64);
  std::vector<std::string> texts;
  for (int i = 0; i < 130; ++i) texts.push_back(std::string(static_cast<std::size_t>(i + 1), 'x'));
  const auto v = embed(texts, backend);
  REQUIRE(v.size() == 130);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i].values[0] == static_cast<double>(i + 1));
  CHECK(v[0].model_name == "test-embed");
  CHECK(server.calls() == 3);
  std::multiset<std::size_t> sizes;
  for (const auto& b : server.bodies()) sizes.insert(nlohmann::json::parse(b)["input"].size());
  CHECK(sizes == std::multiset<std::size_t>{2, 64, 64});
  for (const auto& h : server.auth_headers()) CHECK(h == "Bearer sk-embed");
  ::unsetenv("LARB_TEST_FAKE_KEY");
}

TEST_CASE("HTTP embeddings: malformed replies") {
  FakeServer server([](const httplib::Request&, httplib::Response& res, int call) {
    if (call == 0) {
      res.set_content(R"({"data":[{"index":0,"embedding":[1,2]}]})", "application/json");
    } else if (call == 1) {
      res.set_content(R"({"nothing":true})", "application/json");
    } else {
      res.status = 503;
      res.set_content("overloaded", "text/plain");
    }
  });
  HttpEmbeddingBackend backend(live_config(server.url()));
  CHECK_THROWS_AS(embed({"a", "b"}, backend), BackendError);
  CHECK_THROWS_AS(embed({"a"}, backend), BackendError);
  try {
    embed({"a"}, backend);
    FAIL("expected BackendError");
  } catch (const BackendError& e) {
    CHECK(e.status() == 503);
  }
  CHECK_THROWS_AS(HttpEmbeddingBackend(live_config(server.url()), 0), ConfigError);
  CHECK_THROWS_AS(make_embedding_backend("hosted", live_config(server.url())), ConfigError);
}
