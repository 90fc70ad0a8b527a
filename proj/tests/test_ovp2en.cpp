#include <doctest.h>
#include <functional>

#include <map>
#include <set>

#include "larb/builder/builder.hpp"
#include "larb/error.hpp"
#include "larb/llm/backends.hpp"
#include "larb/pipeline/ovp2en.hpp"
#include "larb/text/unicode.hpp"
#include "support/decode_oracle.hpp"
#include "support/fixtures.hpp"

using namespace larb;
using namespace larb::grammar;
using namespace larb::ovp2en;
using english::Tense;
using larb::testing::decode;
using larb::testing::kSuffixFor;
using larb::testing::lexicon;

namespace {

const Lexeme& L(const char* id) { return lexicon().at(id); }

SentenceSelections make(std::initializer_list<std::pair<Slot, const char*>> slots) {
  SentenceSelections s;
  for (const auto& [slot, id] : slots) s.get(slot) = L(id);
  return s;
}

bool mentions(const std::string& english, const std::string& lemma) {
  const std::string low = text::lower(english);
  for (const auto& form : english::verb_forms(lemma)) {
    if (low.find(form) != std::string::npos) return true;
  }
  return false;
}

std::string head(std::string gloss) {
  gloss = gloss.substr(0, gloss.find_first_of("(,"));
  gloss = gloss.substr(0, gloss.find('/'));
  return text::trim(gloss);
}

}  // namespace

TEST_CASE("the worked sentence encodes to the reference structured message") {
  const auto s = make({{Slot::kSubject, "n.woada"},
                       {Slot::kSubjectSuffix, "ss.ii"},
                       {Slot::kObject, "n.pagwi"},
                       {Slot::kObjectSuffix, "os.oka"},
                       {Slot::kObjectPronoun, "op.u"},
                       {Slot::kVerb, "tv.sawa"},
                       {Slot::kVerbTense, "ts.due"}});
  CHECK(render(s) == "wo'ada-ii pagwi-noka u-zawa-dü.");
  const auto enc = encode(s, lexicon());
  CHECK(to_prompt_json(enc) ==
        R"j([{"part_of_speech":"subject","word":"mosquito","positional":"proximal"},)j"
        R"j({"part_of_speech":"object","word":"fish","positional":"distal"},)j"
        R"j({"part_of_speech":"verb","word":"cook","tense":"present"}])j");
  CHECK(to_prompt_json(enc).find("sense") == std::string::npos);
}

TEST_CASE("pronoun subjects carry no positional") {
  const auto swim = encode(
      make({{Slot::kSubject, "sp.nueue"}, {Slot::kVerb, "iv.pahabi"}, {Slot::kVerbTense, "ts.ti"}}),
      lexicon());
  CHECK(swim.subject().word == "I");
  CHECK_FALSE(swim.subject().positional);
  CHECK(swim.verb().word == "swim");
  CHECK(swim.verb().tense == Tense::kPresentContinuous);
  CHECK(swim.object() == nullptr);

  const auto sneeze = encode(
      make({{Slot::kSubject, "sp.ueue"}, {Slot::kVerb, "iv.kwishai"}, {Slot::kVerbTense, "ts.wei"}}),
      lexicon());
  CHECK(sneeze.subject().word == "you");
  CHECK(sneeze.verb().word == "sneeze");
  CHECK(sneeze.verb().tense == Tense::kFuture);
  CHECK_FALSE(sneeze.verb().going_to);
}

TEST_CASE("incomplete selections are rejected") {
  CHECK_THROWS_AS(encode(make({{Slot::kSubject, "n.isha"}, {Slot::kVerb, "iv.katue"},
                               {Slot::kVerbTense, "ts.due"}}),
                         lexicon()),
                  ValidationError);
  CHECK_THROWS_AS(encode(SentenceSelections{}, lexicon()), ValidationError);
}

TEST_CASE("tense suffixes map one-to-one onto (label, going-to)") {
  std::set<std::pair<Tense, bool>> seen;
  const auto suffixes = lexicon().by_category(Category::kTenseSuffix);
  CHECK(suffixes.size() == 6);
  for (const Lexeme* suf : suffixes) {
    const auto t = tense_of_suffix(*suf);
    CHECK(seen.insert(t).second);
    CHECK(text::nfc(kSuffixFor.at(t)) == suf->surface);
  }
  CHECK(tense_of_suffix(L("ts.gaawei")) == std::pair{Tense::kFuture, true});
  CHECK(tense_of_suffix(L("ts.ti"), {true}).first == Tense::kPastContinuous);
  CHECK_THROWS_AS(tense_of_suffix(L("ss.ii")), CategoryError);
}

TEST_CASE("decode oracle recovers every random sentence") {
  builder::SentenceBuilder b(lexicon());
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto s = b.random_sentence(seed);
    const auto enc = encode(s, lexicon());
    CAPTURE(render(s));
    REQUIRE(decode(enc) == s);
    CHECK(StructuredSentence::from_json(enc.to_json()) == enc);
  }
}

TEST_CASE("mock rendering keeps the subject and verb of every random sentence") {
  builder::SentenceBuilder b(lexicon());
  llm::MockChatBackend mock;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto s = b.random_sentence(seed);
    const auto t = translate_ovp(s, lexicon(), mock);
    CAPTURE(t.surface);
    CAPTURE(t.english);
    CHECK(text::lower(t.english).find(text::lower(head(s.subject->gloss))) != std::string::npos);
    CHECK(mentions(t.english, s.verb->gloss));
  }
}

TEST_CASE("translate_ovp records all three artifacts") {
  llm::MockChatBackend mock;
  const auto rows = larb::testing::reference_rows();
  const auto t = translate_ovp(rows.at(0).selections, lexicon(), mock);
  CHECK(t.surface == rows.at(0).sentence + ".");
  CHECK(t.english == "This cooked us.");
  const auto j = t.to_json();
  CHECK(j.at("structured").size() == 3);

  const auto going = translate_ovp(
      make({{Slot::kSubject, "n.pagwi"}, {Slot::kSubjectSuffix, "ss.ii"},
            {Slot::kVerb, "iv.wuekihaa"}, {Slot::kVerbTense, "ts.gaawei"}}),
      lexicon(), mock);
  CHECK(going.english == "This fish is going to smile.");
}

TEST_CASE("placeholder verbs pass through bracketed") {
  auto s = make({{Slot::kSubject, "n.tsiipa"}, {Slot::kSubjectSuffix, "ss.uu"},
                 {Slot::kVerbTense, "ts.wei"}});
  s.verb = make_placeholder("return", Category::kIntransitiveVerb);
  llm::MockChatBackend mock;
  const auto t = translate_ovp(s, lexicon(), mock);
  CHECK(t.structured.verb().word == "[return]");
  CHECK(t.english == "That bird will [return].");
}
