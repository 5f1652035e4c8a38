import pytest

from slotentropy.data import CorpusLexicon
from slotentropy.extractors import (
    KIND_ORDER,
    Candidate,
    ConstructionKind,
    ExtractionRules,
    HyphenatedExtractor,
    NVNExtractor,
    PassiveExtractor,
    ReducedRelativeExtractor,
    SpanStatus,
    build_extractors,
    dependency_validate,
    extract_hyphenated,
    extract_nvn,
    extract_passive,
    extract_reduced_relative,
    get_all_extractors,
    get_extractor_class,
)
from slotentropy.report.tables import read_matches
from tests.conftest import FIXTURES, make_sentence


PARTICIPLES = ["conduct", "cover", "design", "fill", "make", "stain"]


@pytest.fixture
def lexicon(fixture_corpus):
    observed = CorpusLexicon().observe_all(fixture_corpus.values())
    return observed.merge(CorpusLexicon.from_forms({"design": ["designed"]}))


def extract_all(corpus, lexicon, rules=ExtractionRules()):
    matches = []
    for participle in PARTICIPLES:
        for extractor in build_extractors(participle, rules=rules, lexicon=lexicon):
            for sentence in corpus.values():
                matches.extend(extractor.extract(sentence))
    return matches


def statuses(extractor, sentence):
    return [o.status for o in extractor.outcomes(sentence)]


def test_fixture_precision_and_recall(fixture_corpus, lexicon):
    expected = set(read_matches(FIXTURES / "constructions_expected.tsv"))
    found = extract_all(fixture_corpus, lexicon)
    assert len(found) == len(set(found))
    assert set(found) == expected


def test_registry():
    assert [info["name"] for info in get_all_extractors()] == [k.value for k in KIND_ORDER]
    assert get_extractor_class("passive") is PassiveExtractor
    assert get_extractor_class(ConstructionKind.NVN) is NVNExtractor
    assert get_extractor_class("nope") is None


# ---- passive ----

def test_passive_match(fixture_corpus):
    [match] = extract_passive(fixture_corpus["s01"], "stain")
    assert (match.alpha_lemma, match.head_noun_lemma, match.preposition) == ("tear", "pillow", "with")
    assert match.participle_index == 4 and match.alpha_index == 6


@pytest.mark.parametrize("sentence_id", ["s02", "s16"])
def test_passive_relative_clause_is_filtered(fixture_corpus, sentence_id):
    assert statuses(PassiveExtractor("stain"), fixture_corpus[sentence_id]) == [SpanStatus.FILTERED]


def test_relativizer_set_is_configurable(fixture_corpus):
    rules = ExtractionRules(relativizers=frozenset({"which"}))
    [match] = extract_passive(fixture_corpus["s16"], "stain", rules=rules)
    assert match.alpha_lemma == "coffee"


@pytest.mark.parametrize("sentence_id", ["s03", "s15"])
def test_passive_without_nominal_alpha_fails_dependency(fixture_corpus, sentence_id):
    assert statuses(PassiveExtractor("stain"), fixture_corpus[sentence_id]) == [SpanStatus.DEPENDENCY]


def test_passive_skips_modifier_nouns_before_alpha(fixture_corpus):
    [match] = extract_passive(fixture_corpus["s14"], "fill")
    assert match.alpha_form == "coins"


def test_passive_accepts_pobj_attachment(fixture_corpus):
    [match] = extract_passive(fixture_corpus["s13"], "cover")
    assert match.alpha_lemma == "graffiti"
    assert match.preposition == "with"


# ---- reduced relative ----

def test_reduced_relative_match(fixture_corpus):
    [match] = extract_reduced_relative(fixture_corpus["s06"], "conduct")
    assert (match.alpha_lemma, match.head_noun_lemma, match.preposition) == ("student", "research", "by")


def test_reduced_relative_rejects_possessive(fixture_corpus):
    assert ReducedRelativeExtractor("stain").outcomes(fixture_corpus["s05"]) == []


def test_reduced_relative_adverb_switch(fixture_corpus):
    sentence = fixture_corpus["s19"]
    assert extract_reduced_relative(sentence, "stain") == []
    [match] = extract_reduced_relative(sentence, "stain", rules=ExtractionRules(rr_allow_adverb=True))
    assert (match.participle_index, match.alpha_index, match.head_noun_lemma) == (4, 6, "pillow")


def test_reduced_relative_with_adverb_switch_still_matches_adjacent(fixture_corpus):
    [match] = extract_reduced_relative(fixture_corpus["s04"], "stain", rules=ExtractionRules(rr_allow_adverb=True))
    assert match.alpha_index == 5


# ---- NVN ----

def test_nvn_match(fixture_corpus):
    [match] = extract_nvn(fixture_corpus["s07"], "stain")
    assert (match.alpha_form, match.head_noun_lemma, match.preposition) == ("tear", "pillow", None)


@pytest.mark.parametrize("sentence_id", ["s08", "s09"])
def test_nvn_rejects_non_modifier_alpha(fixture_corpus, sentence_id):
    assert statuses(NVNExtractor("stain"), fixture_corpus[sentence_id]) == [SpanStatus.DEPENDENCY]


def test_nvn_irregular_participle(fixture_corpus):
    [match] = extract_nvn(fixture_corpus["s17"], "make")
    assert match.alpha_lemma == "hand"


@pytest.mark.parametrize("head_tag,expected", [("NN", 1), ("NNZ", 0), ("NPSZ", 0)])
def test_nvn_head_noun_excludes_possessive_tags(head_tag, expected):
    sentence = make_sentence(
        [
            ("a", "a", "DT", 4, "det"),
            ("tear", "tear", "NN", 3, "compound"),
            ("stained", "stain", "VVN", 4, "amod"),
            ("pillow", "pillow", head_tag, 0, "root"),
        ]
    )
    assert len(NVNExtractor("stain").outcomes(sentence)) == expected
    assert len(extract_nvn(sentence, "stain")) == expected


# ---- hyphenated ----

def test_hyphenated_match(fixture_corpus):
    [match] = extract_hyphenated(fixture_corpus["s10"], "stain", participle_forms=["stained"])
    assert (match.alpha_form, match.alpha_lemma, match.head_noun_lemma) == ("tear", "tear", "pillow")
    assert match.alpha_index is None


def test_hyphenated_splits_at_last_hyphen(fixture_corpus):
    [match] = extract_hyphenated(fixture_corpus["s12"], "design", participle_forms=["designed"])
    assert match.alpha_form == "state-of-the-art"
    assert match.head_noun_lemma == "engine"


def test_hyphenated_is_case_insensitive_on_the_tail(fixture_corpus):
    [match] = extract_hyphenated(fixture_corpus["s20"], "stain", participle_forms=["stained"])
    assert (match.alpha_form, match.alpha_lemma) == ("Tear", "tear")


def test_hyphenated_requires_following_noun(fixture_corpus):
    extractor = HyphenatedExtractor("stain", lexicon=CorpusLexicon.from_forms({"stain": ["stained"]}))
    assert statuses(extractor, fixture_corpus["s11"]) == [SpanStatus.FILTERED]


def test_hyphenated_at_sentence_end_is_filtered():
    sentence = make_sentence([("a", "a", "DT", 2, "det"), ("tear-stained", "tear-stained", "JJ", 0, "root")])
    extractor = HyphenatedExtractor("stain", lexicon=CorpusLexicon.from_forms({"stain": ["stained"]}))
    assert statuses(extractor, sentence) == [SpanStatus.FILTERED]


def test_hyphenated_forms_fall_back_to_sentence():
    sentence = make_sentence(
        [
            ("ink-stained", "ink-stained", "JJ", 2, "amod"),
            ("shirts", "shirt", "NNS", 3, "nsubj"),
            ("were", "be", "VBD", 4, "aux:pass"),
            ("stained", "stain", "VVN", 0, "root"),
        ]
    )
    [match] = extract_hyphenated(sentence, "stain")
    assert match.alpha_form == "ink"


def test_hyphenated_without_known_forms_has_no_query(fixture_corpus):
    extractor = HyphenatedExtractor("stain", lexicon=CorpusLexicon())
    assert extractor.query is None
    assert extractor.outcomes(fixture_corpus["s10"]) == []


def test_hyphen_noun_lexicon(fixture_corpus):
    rules = ExtractionRules(hyphen_noun_lexicon=True)
    lexicon = CorpusLexicon.from_forms({"design": ["designed"], "stain": ["stained"]})
    lexicon.nominal_lemmas.add("tear")
    extractor = HyphenatedExtractor("design", rules=rules, lexicon=lexicon)
    assert statuses(extractor, fixture_corpus["s12"]) == [SpanStatus.FILTERED]
    assert len(HyphenatedExtractor("stain", rules=rules, lexicon=lexicon).extract(fixture_corpus["s10"])) == 1


# ---- dependency validation ----

def test_dependency_validate_out_of_range_is_false(fixture_corpus):
    sentence = fixture_corpus["s01"]
    for kind in KIND_ORDER:
        assert not dependency_validate(Candidate(participle_index=99, alpha_index=1), sentence, kind)
    assert not dependency_validate(
        Candidate(participle_index=4, alpha_index=60, preposition_index=5), sentence, ConstructionKind.PASSIVE
    )


def test_dependency_validate_respects_label_sets(fixture_corpus):
    candidate = Candidate(participle_index=4, alpha_index=6, head_noun_index=2, preposition_index=5)
    sentence = fixture_corpus["s01"]
    assert dependency_validate(candidate, sentence, ConstructionKind.PASSIVE)
    rules = ExtractionRules(phrasal_deprels=frozenset({"nmod"}))
    assert not dependency_validate(candidate, sentence, ConstructionKind.PASSIVE, rules)
