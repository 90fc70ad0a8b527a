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

#include <doctest.h>

#include <sstream>

#include "larb/error.hpp"
#include "larb/grammar/morphology.hpp"
#include "larb/grammar/sentence.hpp"
#include "support/fixtures.hpp"

using namespace larb;
using namespace larb::grammar;
using larb::testing::lexicon;

namespace {

const Lexeme& L(const char* id) { return lexicon().at(id); }

SentenceSelections make(std::initializer_list<std::pair<Slot, const char*>> slots) {
  SentenceSelections s;
  for (const auto& [slot, id] : slots) s.get(slot) = L(id);
  return s;
}

}  // namespace

TEST_CASE("shipped lexicon covers the reference vocabulary") {
  const auto& lex = lexicon();
  CHECK(lex.by_category(Category::kTransitiveVerb).size() == 14);
  // 22 intransitive verbs plus the hukaw̃ia spelling variant.
  CHECK(lex.by_category(Category::kIntransitiveVerb).size() == 23);
  CHECK(lex.by_category(Category::kNoun).size() == 33);
  CHECK(lex.by_category(Category::kTenseSuffix).size() == 6);
  CHECK(lex.by_category(Category::kSubjectPronoun).size() == 12);
  CHECK(lex.by_category(Category::kSubjectSuffix).size() == 2);
  CHECK(lex.by_category(Category::kObjectPronounPrefix).size() == 12);
  CHECK(lex.by_category(Category::kObjectSuffix).size() == 2);
  CHECK(lex.word_order() == WordOrder::kSecondPosition);
  CHECK(lex.version() == "1.0");

  for (const auto& e : lex.entries()) {
    CHECK(e.surface == text::nfc(e.surface));
    if (e.lenited_surface) CHECK(is_verb(e.category));
    if (e.category == Category::kNoun) CHECK_FALSE(e.proximity);
    if (e.category == Category::kSubjectSuffix || e.category == Category::kObjectSuffix) {
      CHECK(e.proximity);
    }
    CHECK_FALSE(e.gloss.empty());
  }
  // w̃ is w + combining tilde; NFC leaves it decomposed.
  CHECK(L("tv.mui").lenited_surface == std::string("w\xCC\x83ui"));
}

TEST_CASE("lexicon parser rejects broken files") {
  const std::string header =
      "id\tcategory\tsurface\tgloss\tlenited\tplurality\tproximity\taliases\tflags\n";
  std::string base;
  for (const auto& e : lexicon().entries()) {
    base += e.id + "\t" + std::string(to_string(e.category)) + "\t" + e.surface + "\t" +
            e.gloss + "\t" + e.lenited_surface.value_or("") + "\t" +
            (e.plurality ? std::string(to_string(*e.plurality)) : "") + "\t" +
            (e.proximity ? std::string(to_string(*e.proximity)) : "") + "\t\t\n";
  }
  {
    std::istringstream in(header + base);
    CHECK(Lexicon::parse(in).entries().size() == lexicon().entries().size());
  }
  {
    std::istringstream in(header + base + "n.isha\tnoun\tisha'\tcoyote\t\t\t\t\t\n");
    CHECK_THROWS_AS(Lexicon::parse(in), InputError);
  }
  {
    std::istringstream in(header + base + "n.extra\tnoun\tx\ty\tz\t\t\t\t\n");
    CHECK_THROWS_AS(Lexicon::parse(in), InputError);
  }
  {
    std::istringstream in(header + "n.a\tnoun\ta\tb\t\t\t\t\t\n");
    CHECK_THROWS_AS(Lexicon::parse(in), InputError);  // categories missing
  }
  {
    std::istringstream in(header + base + "n.b\tnoun\tb\tc\t\t\tproximal\t\t\n");
    CHECK_THROWS_AS(Lexicon::parse(in), InputError);
  }
  CHECK_THROWS_AS(lexicon().at("n.nope"), LookupError);
}

TEST_CASE("english lookup uses glosses and aliases") {
  const auto& lex = lexicon();
  auto hits = lex.lookup_english("Walk", Category::kIntransitiveVerb);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0]->id == "iv.hukawa");  // canonical before variant
  CHECK(lex.lookup_english("weasel", Category::kNoun).at(0)->id == "n.tuesuega");
  CHECK(lex.lookup_english("she", Category::kSubjectPronoun).at(0)->id == "sp.uhu");
  CHECK(lex.lookup_english("migrate", Category::kIntransitiveVerb).empty());
  CHECK(lex.sense_of(L("sp.mahu")) == 1);
  CHECK(lex.sense_of(L("sp.uhu")) == 0);
  CHECK(lex.sense_of(L("op.a")) == 1);
  CHECK(lex.by_sense(Category::kObjectPronounPrefix, "him/her/it (proximal)", 0)->id == "op.ma");
}

TEST_CASE("attach_subject_suffix") {
  CHECK(attach_subject_suffix(L("n.tabuutsi"), Proximity::kDistal) == "tabuutsi'-uu");
  CHECK(attach_subject_suffix(L("n.isha"), Proximity::kProximal) == "isha'-ii");
  CHECK(attach_subject_suffix(L("n.toni"), Proximity::kDistal) == "toni-uu");
  CHECK_THROWS_AS(attach_subject_suffix(L("sp.nueue"), Proximity::kDistal), CategoryError);
}

TEST_CASE("attach_object_suffix") {
  CHECK(attach_object_suffix(L("n.pagwi"), Proximity::kDistal) == "pagwi-noka");
  CHECK(attach_object_suffix(L("n.isha"), Proximity::kDistal) == "isha'-oka");
  CHECK(attach_object_suffix(L("n.tueba"), Proximity::kProximal) == "tüba-neika");
  CHECK_THROWS_AS(attach_object_suffix(L("tv.puni"), Proximity::kDistal), CategoryError);

  Lexeme forced = L("n.isha");
  forced.n_insertion = NInsertion::kAlways;
  CHECK(attach_object_suffix(forced, Proximity::kProximal) == "isha'-neika");
  forced = L("n.pagwi");
  forced.n_insertion = NInsertion::kNever;
  CHECK(attach_object_suffix(forced, Proximity::kDistal) == "pagwi-oka");
}

TEST_CASE("no linking n after a glottal stop anywhere in the lexicon") {
  for (const Lexeme* noun : lexicon().by_category(Category::kNoun)) {
    for (auto p : {Proximity::kProximal, Proximity::kDistal}) {
      const std::string s = attach_object_suffix(*noun, p);
      CHECK(s.find("'-n") == std::string::npos);
      if (noun->surface.back() != '\'') CHECK(s.find("-n") != std::string::npos);
    }
  }
}

TEST_CASE("lenite") {
  CHECK(lenite(L("tv.puni")) == "buni");
  CHECK(lenite(L("tv.sawa")) == "zawa");
  CHECK(lenite(L("tv.naka")) == "naka");
  CHECK(lenite(L("tv.tamai")) == "dama'i");
  CHECK(lenite(L("iv.katue")) == "katü");
}

TEST_CASE("compose_verb") {
  CHECK(compose_verb(L("tv.puni"), &L("op.u"), L("ts.ku")) == "u-buni-ku");
  CHECK(compose_verb(L("iv.kwishai"), nullptr, L("ts.wei")) == "kwisha'i-wei");
  CHECK(compose_verb(L("tv.mui"), &L("op.mai"), L("ts.gaawei")) ==
        "mai-w\xCC\x83ui-gaa-wei");
  CHECK(compose_verb(L("tv.puni"), nullptr, L("ts.ku")) == "puni-ku");
  CHECK_THROWS_AS(compose_verb(L("iv.katue"), &L("op.u"), L("ts.ku")), AgreementError);
  CHECK_THROWS_AS(compose_verb(L("tv.puni"), &L("op.u"), L("ss.ii")), CategoryError);

  const Lexeme placeholder = make_placeholder("migrate", Category::kTransitiveVerb);
  CHECK(compose_verb(placeholder, &L("op.u"), L("ts.wei")) == "u-[migrate]-wei");
}

TEST_CASE("agreement_ok") {
  CHECK(agreement_ok(L("os.eika"), L("op.ma")));
  CHECK_FALSE(agreement_ok(L("os.oka"), L("op.a")));
  CHECK(agreement_ok(L("os.oka"), L("op.ui")));
  CHECK_FALSE(agreement_ok(L("os.oka"), L("op.tei")));

  // Flipping both proximities never changes the verdict.
  auto flip = [](Lexeme l) {
    if (l.proximity) {
      l.proximity = *l.proximity == Proximity::kProximal ? Proximity::kDistal
                                                         : Proximity::kProximal;
    }
    return l;
  };
  for (const Lexeme* suffix : lexicon().by_category(Category::kObjectSuffix)) {
    for (const Lexeme* prefix : lexicon().by_category(Category::kObjectPronounPrefix)) {
      CHECK(agreement_ok(*suffix, *prefix) == agreement_ok(flip(*suffix), flip(*prefix)));
    }
  }
}

TEST_CASE("validate") {
  auto v = validate(make({{Slot::kSubject, "sp.nueue"},
                          {Slot::kVerb, "iv.pahabi"},
                          {Slot::kVerbTense, "ts.ti"}}));
  CHECK(v.complete());

  v = validate({});
  CHECK(v.status == Verdict::Status::kIncomplete);
  CHECK(v.missing == std::vector<Slot>{Slot::kSubject, Slot::kVerb, Slot::kVerbTense});
  CHECK(v.summary() == "incomplete(subject, verb, verb_tense)");

  v = validate(make({{Slot::kSubject, "n.isha"},
                     {Slot::kVerb, "iv.katue"},
                     {Slot::kVerbTense, "ts.due"}}));
  CHECK(v.status == Verdict::Status::kInvalid);
  CHECK(v.violations == std::vector<Violation>{Violation::kMissingSubjectSuffix});

  v = validate(make({{Slot::kSubject, "sp.nueue"},
                     {Slot::kSubjectSuffix, "ss.ii"},
                     {Slot::kVerb, "iv.katue"},
                     {Slot::kVerbTense, "ts.due"}}));
  CHECK(v.violations == std::vector<Violation>{Violation::kSuffixOnPronounSubject});

  v = validate(make({{Slot::kSubject, "sp.nueue"},
                     {Slot::kVerb, "tv.puni"},
                     {Slot::kVerbTense, "ts.due"},
                     {Slot::kObject, "n.pugu"},
                     {Slot::kObjectSuffix, "os.eika"},
                     {Slot::kObjectPronoun, "op.u"}}));
  CHECK(v.violations == std::vector<Violation>{Violation::kSuffixPrefixDisagreement});

  v = validate(make({{Slot::kSubject, "sp.nueue"},
                     {Slot::kVerb, "tv.puni"},
                     {Slot::kVerbTense, "ts.due"}}));
  CHECK(v.violations == std::vector<Violation>{Violation::kMissingObjectPronoun});

  v = validate(make({{Slot::kSubject, "sp.nueue"},
                     {Slot::kVerb, "tv.puni"},
                     {Slot::kVerbTense, "ts.due"},
                     {Slot::kObject, "n.pugu"},
                     {Slot::kObjectSuffix, "os.oka"},
                     {Slot::kObjectPronoun, "op.tei"}}));
  CHECK(v.status == Verdict::Status::kInvalid);

  SentenceSelections wrong;
  wrong.subject = L("tv.puni");
  CHECK(validate(wrong).violations == std::vector<Violation>{Violation::kWrongCategory});
}

TEST_CASE("validate rejects every object slot with an intransitive verb") {
  for (const Lexeme* verb : lexicon().by_category(Category::kIntransitiveVerb)) {
    for (Slot slot : {Slot::kObject, Slot::kObjectSuffix, Slot::kObjectPronoun}) {
      auto s = make({{Slot::kSubject, "sp.nueue"}, {Slot::kVerbTense, "ts.ku"}});
      s.verb = *verb;
      s.get(slot) = slot == Slot::kObject         ? L("n.pugu")
                    : slot == Slot::kObjectSuffix ? L("os.oka")
                                                  : L("op.u");
      const auto v = validate(s);
      CHECK(v.status == Verdict::Status::kInvalid);
      CHECK(std::find(v.violations.begin(), v.violations.end(),
                      Violation::kObjectWithIntransitiveVerb) != v.violations.end());
    }
  }
}

TEST_CASE("render") {
  CHECK(render(make({{Slot::kSubject, "n.tabuutsi"},
                     {Slot::kSubjectSuffix, "ss.uu"},
                     {Slot::kObject, "n.tueba"},
                     {Slot::kObjectSuffix, "os.oka"},
                     {Slot::kObjectPronoun, "op.u"},
                     {Slot::kVerb, "tv.puni"},
                     {Slot::kVerbTense, "ts.ku"}})) == "tabuutsi'-uu tüba-noka u-buni-ku.");
  CHECK(render(make({{Slot::kSubject, "n.woada"},
                     {Slot::kSubjectSuffix, "ss.ii"},
                     {Slot::kObject, "n.pagwi"},
                     {Slot::kObjectSuffix, "os.oka"},
                     {Slot::kObjectPronoun, "op.u"},
                     {Slot::kVerb, "tv.sawa"},
                     {Slot::kVerbTense, "ts.due"}})) == "wo'ada-ii pagwi-noka u-zawa-dü.");

  const auto swim = make({{Slot::kSubject, "sp.nueue"},
                          {Slot::kVerb, "iv.pahabi"},
                          {Slot::kVerbTense, "ts.ti"}});
  CHECK(render(swim, WordOrder::kTranslator) == "nüü pahabi-ti.");
  CHECK(render(swim, WordOrder::kSecondPosition) == "pahabi-ti nüü.");

  const auto object_pronoun_subject = make({{Slot::kSubject, "sp.uhu"},
                                            {Slot::kObject, "n.maishibue"},
                                            {Slot::kObjectSuffix, "os.eika"},
                                            {Slot::kObjectPronoun, "op.ai"},
                                            {Slot::kVerb, "tv.nia"},
                                            {Slot::kVerbTense, "ts.ti"}});
  CHECK(render(object_pronoun_subject) == "maishibü-neika uhu ai-nia-ti.");
  CHECK(render(object_pronoun_subject, WordOrder::kTranslator) ==
        "uhu maishibü-neika ai-nia-ti.");

  CHECK_THROWS_AS(render({}), ValidationError);
}

TEST_CASE("selections json round trip") {
  const auto s = make({{Slot::kSubject, "n.isha"},
                       {Slot::kSubjectSuffix, "ss.ii"},
                       {Slot::kVerb, "iv.katue"},
                       {Slot::kVerbTense, "ts.due"}});
  const auto j = selections_to_json(s);
  CHECK(j.at("subject") == "n.isha");
  CHECK_FALSE(j.contains("object"));
  CHECK(selections_from_json(j, lexicon()) == s);
  CHECK_THROWS_AS(selections_from_json(nlohmann::json{{"subjekt", "n.isha"}}, lexicon()),
                  InputError);
  CHECK_THROWS_AS(selections_from_json(nlohmann::json{{"subject", 3}}, lexicon()),
                  InputError);
  CHECK_THROWS_AS(selections_from_json(nlohmann::json{{"subject", "n.zzz"}}, lexicon()),
                  LookupError);
}

TEST_CASE("reference sentences render byte for byte") {
  const auto rows = larb::testing::reference_rows();
  REQUIRE(rows.size() == 100);
  for (const auto& row : rows) {
    INFO(row.sentence);
    REQUIRE(validate(row.selections).complete());
    CHECK(render(row.selections) == text::nfc(row.sentence) + ".");
  }
}
