#include <doctest.h>

#include <deque>
#include <mutex>
#include <regex>

#include "larb/error.hpp"
#include "larb/eval/dataset.hpp"
#include "larb/llm/backends.hpp"
#include "larb/pipeline/en2ovp.hpp"
#include "larb/pipeline/ovp2en.hpp"
#include "larb/text/unicode.hpp"
#include "support/fixtures.hpp"

using namespace larb;
using namespace larb::en2ovp;
using english::Tense;
using grammar::Category;
using larb::testing::lexicon;

namespace {

SimpleSentence S(const char* subj, const char* verb, Tense t,
                 std::optional<std::string> obj = std::nullopt) {
  return SimpleSentence{subj, verb, t, std::move(obj)};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

// Segmenter replies are scripted; render requests fall through to the mock.
class SegmentScript : public llm::ChatBackend {
 public:
  explicit SegmentScript(std::deque<std::string> replies) : replies_(std::move(replies)) {}
  std::string send(const llm::ChatRequest& r) override {
    std::lock_guard lock(mu_);
    if (r.template_name == "render") {
      if (fail_render) throw BackendError(503, "down");
      return mock_.send(r);
    }
    auto out = replies_.front();
    replies_.pop_front();
    return out;
  }
  std::string model_name() const override { return "script"; }
  bool fail_render = false;

 private:
  std::mutex mu_;
  std::deque<std::string> replies_;
  llm::MockChatBackend mock_;
};

}  // namespace

TEST_CASE("map_vocab and build_ovp on the worked examples") {
  SUBCASE("I am swimming") {
    const auto m = map_vocab(S("I", "swim", Tense::kPresentContinuous), lexicon());
    CHECK(m.fully_mapped());
    CHECK(m.selections.subject->id == "sp.nueue");
    CHECK(m.selections.verb->id == "iv.pahabi");
    CHECK(build_ovp(m).surface == "nüü pahabi-ti.");
    CHECK(build_ovp(m).complete);
  }
  SUBCASE("she cooks with no object") {
    const auto m = map_vocab(S("she", "cook", Tense::kPresentContinuous), lexicon());
    CHECK(m.fully_mapped());
    CHECK(m.selections.subject->id == "sp.uhu");
    CHECK(m.selections.verb->id == "tv.sawa");
    CHECK(m.transitivity == Transitivity::kOtherCategory);
    CHECK(build_ovp(m).surface == "uhu sawa-ti.");
  }
  SUBCASE("unknown verb becomes a placeholder with real affixes") {
    const auto m = map_vocab(S("bird", "migrate", Tense::kFuture), lexicon());
    CHECK(m.selections.subject->id == "n.tsiipa");
    CHECK(m.selections.verb->placeholder);
    CHECK(m.placeholders == std::vector<std::string>{"migrate"});
    CHECK(m.transitivity == Transitivity::kUnknown);
    CHECK(build_ovp(m).surface == "[migrate]-wei tsiipa-uu.");
    CHECK_FALSE(build_ovp(m).complete);
  }
  SUBCASE("unknown subject") {
    const auto m = map_vocab(S("brother", "go", Tense::kPast), lexicon());
    CHECK(build_ovp(m).surface == "mia-ku [brother]-uu.");
  }
}

TEST_CASE("objects take a suffix and an agreeing prefix") {
  auto m = map_vocab(S("I", "see", Tense::kPast, "mountain"), lexicon());
  CHECK(build_ovp(m).surface == "nüü toyabi-noka u-buni-ku.");
  m = map_vocab(S("I", "see", Tense::kPast, "these mountains"), lexicon());
  CHECK(build_ovp(m).surface == "nüü toyabi-neika ai-buni-ku.");
  m = map_vocab(S("I", "see", Tense::kPast, "those horses"), lexicon());
  CHECK(build_ovp(m).surface == "nüü pugu-noka ui-buni-ku.");
  m = map_vocab(S("he", "see", Tense::kPast, "me"), lexicon());
  CHECK(build_ovp(m).surface == "uhu i-buni-ku.");
  m = map_vocab(S("they", "chase", Tense::kPast, "him"), lexicon());
  CHECK(build_ovp(m).surface == "uhuw̃a u-naki-ku.");
  m = map_vocab(S("the dog", "eat", Tense::kPast, "apple"), lexicon());
  CHECK(build_ovp(m).surface == "aaponu'-oka u-düka-ku isha'pugu-uu.");
  m = map_vocab(S("rabbit", "eat", Tense::kPast, "book"), lexicon());
  CHECK(build_ovp(m).surface == "[book]-noka u-düka-ku tabuutsi'-uu.");
  CHECK_FALSE(m.object_mapped);
}

TEST_CASE("an intransitive-only verb with an object is a placeholder") {
  const auto m = map_vocab(S("I", "walk", Tense::kPast, "beach"), lexicon());
  CHECK(m.selections.verb->placeholder);
  CHECK(m.selections.verb->category == Category::kTransitiveVerb);
  CHECK(m.transitivity == Transitivity::kOtherCategory);
}

TEST_CASE("inflected verbs and plural nouns are normalized") {
  const auto m = map_vocab(S("birds", "swimming", Tense::kPresentContinuous), lexicon());
  CHECK(m.fully_mapped());
  CHECK(build_ovp(m).surface == "pahabi-ti tsiipa-uu.");
}

TEST_CASE("synonym table") {
  Synonyms syn;
  syn.add("hike", "walk");
  syn.add("Puppy", "dog");
  const auto m = map_vocab(S("puppy", "hike", Tense::kPast), lexicon(), &syn);
  CHECK(m.fully_mapped());
  CHECK(build_ovp(m).surface == "hukaw̃a-ku isha'pugu-uu.");
  CHECK_FALSE(map_vocab(S("puppy", "hike", Tense::kPast), lexicon()).fully_mapped());
}

TEST_CASE("comparators replace unmapped roles with tokens") {
  english::Mentions cm;
  english::Mentions sm;
  const auto a = S("bird", "migrate", Tense::kFuture);
  const auto b = S("bird", "return", Tense::kFuture);
  CHECK(comparator(a, map_vocab(a, lexicon()), cm) == "A bird will [VERB].");
  CHECK(comparator(b, map_vocab(b, lexicon()), cm) == "The bird will [VERB].");
  CHECK(render_simple(a, sm) == "A bird will migrate.");
  CHECK(render_simple(b, sm) == "The bird will return.");

  english::Mentions m2;
  const auto w = S("woman", "wash", Tense::kPresentContinuous);
  CHECK(comparator(w, map_vocab(w, lexicon()), m2) == "[SUBJECT] is [VERB]-ing.");
  const auto o = S("I", "see", Tense::kPast, "ship");
  CHECK(comparator(o, map_vocab(o, lexicon()), m2) == "I saw [OBJECT].");
  const auto g = S("brother", "go", Tense::kPast);
  CHECK(comparator(g, map_vocab(g, lexicon()), m2) == "[SUBJECT] went.");
}

TEST_CASE("comparator equals the plain rendering when everything maps") {
  llm::MockChatBackend mock;
  for (const auto& d : eval::load_dataset(larb::testing::data_dir() / "english_sentences.tsv")) {
    const auto simples = segment(d.sentence, mock);
    english::Mentions a, b;
    for (const auto& s : simples) {
      const auto m = map_vocab(s, lexicon());
      const auto plain = render_simple(s, a);
      const auto comp = comparator(s, m, b);
      CAPTURE(plain);
      CHECK((comp == plain) == m.fully_mapped());
      const auto built = build_ovp(m);
      if (built.complete) CHECK(grammar::validate(built.selections).complete());
    }
  }
}

TEST_CASE("mapping then encoding recovers the simple sentence's lemmas") {
  const std::vector<SimpleSentence> simples{
      S("dog", "chase", Tense::kPast, "cat"),
      S("I", "swim", Tense::kPresentContinuous),
      S("coyote", "eat", Tense::kFuture, "pinenuts"),
      S("horse", "drink", Tense::kPresent, "water"),
      S("bird", "fly", Tense::kPresentPerfect),
  };
  for (const auto& s : simples) {
    const auto m = map_vocab(s, lexicon());
    REQUIRE(m.fully_mapped());
    const auto enc = ovp2en::encode(build_ovp(m).selections, lexicon());
    CHECK(enc.subject().word == s.subject);
    CHECK(enc.verb().word == s.verb);
    CHECK(enc.verb().tense == s.verb_tense);
    if (s.object) CHECK(enc.object()->word == *s.object);
  }
}

TEST_CASE("translate_english on the worked examples with the mock") {
  llm::MockChatBackend mock;
  const auto swim = translate_english("I am swimming.", lexicon(), mock);
  REQUIRE(swim.simples.size() == 1);
  CHECK(swim.ovp_surfaces[0] == "nüü pahabi-ti.");
  CHECK(swim.simple_english[0] == "I am swimming.");
  CHECK(swim.comparators[0] == "I am swimming.");
  CHECK(swim.backwards[0] == "I am swimming.");
  CHECK(swim.consistent());
  CHECK(swim.model_name == "mock");
  CHECK_FALSE(swim.scores);

  const auto birds = translate_english("Birds will migrate and return.", lexicon(), mock);
  REQUIRE(birds.simples.size() == 2);
  CHECK(birds.ovp_surfaces[0] == "[migrate]-wei tsiipa-uu.");
  CHECK(birds.comparators ==
        std::vector<std::string>{"A bird will [VERB].", "The bird will [VERB]."});
  CHECK(birds.backwards[0] == "That bird will [migrate].");

  const auto cook = translate_english("She is cooking.", lexicon(), mock);
  CHECK(cook.ovp_surfaces[0] == "uhu sawa-ti.");
  CHECK(cook.backwards[0] == "He is cooking.");
}

TEST_CASE("placeholders are conserved through OVP and back") {
  llm::MockChatBackend mock;
  for (const auto& d : eval::load_dataset(larb::testing::data_dir() / "english_sentences.tsv")) {
    const auto r = translate_english(d.sentence, lexicon(), mock);
    CAPTURE(d.sentence);
    REQUIRE(r.consistent());
    for (std::size_t i = 0; i < r.simples.size(); ++i) {
      const auto m = map_vocab(r.simples[i], lexicon());
      const auto enc = ovp2en::encode(build_ovp(m).selections, lexicon()).to_json().dump();
      for (const auto& p : r.placeholders[i]) {
        const std::string token = "[" + p + "]";
        CHECK(count(r.ovp_surfaces[i], token) == 1);
        CHECK(enc.find(token) != std::string::npos);
      }
      // No brackets beyond the placeholders.
      CHECK(count(r.ovp_surfaces[i], "[") == r.placeholders[i].size());
    }
  }
}

TEST_CASE("segmentation failures and per-item backend failures") {
  SUBCASE("unusable segmenter reply") {
    SegmentScript b({"nope", "still nope"});
    try {
      translate_english("The dog barked.", lexicon(), b);
      FAIL("expected SegmentationError");
    } catch (const SegmentationError& e) {
      CHECK(e.raw() == "still nope");
    }
  }
  SUBCASE("render failure is recorded per item") {
    SegmentScript b({R"j([{"subject":"I","verb":"swim","verb_tense":"past"},
                         {"subject":"dog","verb":"sleep","verb_tense":"past"}])j"});
    b.fail_render = true;
    const auto r = translate_english("I swam and the dog slept.", lexicon(), b);
    CHECK(r.consistent());
    CHECK(r.backwards == std::vector<std::string>{"", ""});
    CHECK(r.errors[0].find("503") != std::string::npos);
    CHECK(r.ovp_surfaces[1] == "üwi-ku isha'pugu-uu.");
  }
  SUBCASE("empty input") {
    llm::MockChatBackend mock;
    CHECK_THROWS_AS(translate_english("   ", lexicon(), mock), InputError);
  }
}

TEST_CASE("translation records round trip through JSON") {
  llm::MockChatBackend mock;
  auto r = translate_english("The dog chased the cat.", lexicon(), mock);
  r.scores = Scores{0.9, 0.8, 0.7};
  r.embedding_model = "mock-embed";
  r.type = "subject-verb-object";
  const auto j = r.to_json();
  const auto back = TranslationRecord::from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.to_json() == j);
  CHECK(std::regex_match(r.timestamp, std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
  CHECK_THROWS_AS(TranslationRecord::from_json(nlohmann::json{{"input", 3}}), InputError);
}
