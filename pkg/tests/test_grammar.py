"""Test grammar loading, rule matching and realization"""
import logging

import pytest

from decoder.strategies import default_path
from grammar.loader import GrammarFormatError, load_grammar, load_lexicon
from grammar.matcher import RealizationError, match_rule
from grammar.realizer import (
    build_estructure,
    eval_expr,
    item_lattice,
    leaf_estructure,
    parse_pos_tag,
    realize,
)
from lattice import count_paths, enumerate_paths, wrd
from models.grammar import EStructure, Eps, LexicalItem, Or, SlotRef, Wrd
from models.morphology import Feature, PartOfSpeech
from scripts.first_alternative import first_alternative
from semantics.spl import parse_spl

SAMPLE_RULE = """
(categories s np v v-tensed v-passive inf inf-raise)
((x1 :agent) (x2 :patient) (x3 :rest)
 -> (s (seq (x1 np) (x3 v-tensed) (x2 np)))
    (inf (seq (wrd "for") (x1 np) (wrd "to") (x3 v) (x2 np)))
    (inf-raise (seq (x1 np) (wrd "to") (x3 v) (x2 np)))
    (np (seq (x3 np) (wrd "of") (x2 np) (wrd "by") (x1 np))))
"""

SAMPLE_LEXICON = """
(|accuse| (v "accuse" verb) (v-tensed "accuse" verb/past) (np "accusation" pron))
(|motorcar| (np "the car" pron))
(SHE (np "she" pron) (np "her" pron))
"""


def test_load_toy_grammar(toy_grammar):
    """Test the toy grammar loads its categories and rules in order"""
    assert toy_grammar.categories == ("s", "np", "v", "v-tensed", "v-passive", "inf", "inf-raise", "adv")
    assert len(toy_grammar.rules) == 3
    first = toy_grammar.rules[0]
    assert first.position == 0
    assert first.required_roles == frozenset({":agent", ":patient"})
    assert first.rest_slot == "x3"
    assert [alt.category for alt in first.rhs] == ["s", "s", "s", "s", "inf", "inf-raise", "np"]


def test_category_alternation_becomes_or(toy_grammar):
    """Test (x2 (*OR* inf inf-raise)) is an Or over one slot reference per category"""
    expr = toy_grammar.rules[0].rhs[2].expr
    alternation = expr.parts[-1]
    assert alternation == Or(
        alternatives=(SlotRef(slot="x2", category="inf"), SlotRef(slot="x2", category="inf-raise"))
    )


def test_epsilon_in_rule_body():
    """Test '*' inside a rule body is the empty lattice"""
    grammar = load_grammar("(categories np)\n((x1 :head) -> (np (or (wrd \"the\") *)))")
    assert grammar.rules[0].rhs[0].expr == Or(alternatives=(Wrd(word="the"), Eps()))


def test_undeclared_category():
    """Test a category missing from the header is a load error with a line number"""
    text = "(categories s np)\n((x1 :agent) -> (s (x1 vp)))"
    with pytest.raises(GrammarFormatError, match="undeclared category 'vp'") as e:
        load_grammar(text, source="bad.grammar")
    assert e.value.line == 2
    assert str(e.value).startswith("bad.grammar:2")


def test_rule_without_arrow():
    """Test a rule must contain exactly one arrow"""
    with pytest.raises(GrammarFormatError, match="exactly one"):
        load_grammar("(categories s)\n((x1 :agent) (s (wrd \"a\")))")


def test_unbound_slot():
    """Test a right-hand side may only use slots bound on the left"""
    with pytest.raises(GrammarFormatError, match="not bound"):
        load_grammar("(categories s np)\n((x1 :agent) -> (s (x2 np)))")


def test_two_rest_slots():
    """Test at most one :rest slot per rule"""
    with pytest.raises(GrammarFormatError, match=":rest"):
        load_grammar("(categories s)\n((x1 :agent) (x2 :rest) (x3 :rest) -> (s (wrd \"a\")))")


def test_missing_categories_header():
    """Test a grammar must declare its categories first"""
    with pytest.raises(GrammarFormatError, match="categories"):
        load_grammar("((x1 :agent) -> (s (wrd \"a\")))")


def test_load_lexicon(toy_lexicon):
    """Test lexicon entries keep their renderings in order"""
    entry = toy_lexicon.lookup("motorcar")
    assert [item.citation for item in entry.items] == ["the auto", "the car", "car", "auto"]
    assert toy_lexicon.lookup("SHE").items[1] == LexicalItem(category="np", citation="her", pos="pron")
    assert toy_lexicon.lookup("she") is toy_lexicon.lookup("SHE")
    assert toy_lexicon.lookup("bicycle") is None


def test_lexicon_errors():
    """Test duplicate concepts, empty citations and unknown categories"""
    with pytest.raises(GrammarFormatError, match="duplicate"):
        load_lexicon('(|a| (np "a" noun))\n(|a| (np "b" noun))')
    with pytest.raises(GrammarFormatError, match="empty citation"):
        load_lexicon('(|a| (np "  " noun))')
    with pytest.raises(GrammarFormatError, match="undeclared category"):
        load_lexicon('(|a| (vp "a" verb))', categories=("np",))


def test_match_agent_patient(toy_grammar, see_node):
    """Test both slots are bound and nothing is left over"""
    match = match_rule(see_node, toy_grammar.rules)
    assert match.rule.position == 0
    assert match.bindings["x1"] == "HE"
    assert match.bindings["x2"] == "I"
    assert match.rest == frozenset()
    assert match.bindings["x3"].is_leaf


def test_match_collects_rest(toy_grammar):
    """Test unmatched roles travel in the :rest slot"""
    node = parse_spl("(A / |accuse| :AGENT SHE :PATIENT HE :TIME YESTERDAY)")
    match = match_rule(node, toy_grammar.rules)
    assert match.rule.position == 0
    assert match.rest == frozenset({":time"})
    rest = match.bindings["x3"]
    assert rest.var == "A"
    assert rest.concept == node.concept
    assert rest.role_names == (":time",)


def test_match_ignores_role_order(toy_grammar):
    """Test permuting the input's roles selects the same rule"""
    a = parse_spl("(A / |accuse| :AGENT SHE :PATIENT HE :TIME YESTERDAY)")
    b = parse_spl("(A / |accuse| :TIME YESTERDAY :PATIENT HE :AGENT SHE)")
    assert match_rule(a, toy_grammar.rules).rule == match_rule(b, toy_grammar.rules).rule


def test_match_falls_through_to_later_rule(toy_grammar):
    """Test an agent-only input skips the agent-patient rule"""
    node = parse_spl("(Z / |sleep| :AGENT HE)")
    assert match_rule(node, toy_grammar.rules).rule.position == 1


def test_no_rule_matches(toy_grammar):
    """Test the error names the input's roles"""
    node = parse_spl("(A / |accuse| :PATIENT HE)")
    with pytest.raises(RealizationError, match=r"\{:patient\}") as e:
        match_rule(node, toy_grammar.rules)
    assert e.value.roles == (":patient",)


def test_match_needs_rules(see_node):
    """Test matching against an empty rule list is a usage error"""
    with pytest.raises(ValueError):
        match_rule(see_node, [])


def test_residual_roles_without_rest_slot(caplog):
    """Test roles no slot can take are dropped with a warning"""
    grammar = load_grammar("(categories s np)\n((x1 :agent) -> (s (x1 np)))")
    node = parse_spl("(A / |x| :AGENT SHE :TIME YESTERDAY)")
    with caplog.at_level(logging.WARNING):
        match = match_rule(node, grammar.rules)
    assert match.rest == frozenset({":time"})
    assert "x3" not in match.bindings
    assert "dropping roles" in caplog.text


def test_parse_pos_tag():
    """Test bare and featured part-of-speech tags"""
    assert parse_pos_tag("noun") == (PartOfSpeech.NOUN, (Feature.CITATION, Feature.PLURAL))
    assert parse_pos_tag("verb") == (PartOfSpeech.VERB, (Feature.CITATION,))
    assert parse_pos_tag("verb/past+third-singular") == (
        PartOfSpeech.VERB,
        (Feature.PAST, Feature.THIRD_SINGULAR),
    )
    assert parse_pos_tag("pron") == (None, (Feature.CITATION,))
    with pytest.raises(RealizationError):
        parse_pos_tag("verb/future")


def test_multiword_citation_inflects_head_only(irregular):
    """Test only the last word of a citation is inflected"""
    item = LexicalItem(category="v-passive", citation="was steal", pos="verb/past-participle")
    lattice = item_lattice(item, irregular)
    assert list(enumerate_paths(lattice)) == [("was", "stolen")]
    nouns = item_lattice(LexicalItem(category="np", citation="the potato", pos="noun"))
    assert list(enumerate_paths(nouns)) == [("the", "potato"), ("the", "potatos"), ("the", "potatoes")]


def test_capitalized_head_stays_capitalized():
    """Test inflected forms of a capitalized head keep the capital"""
    lattice = item_lattice(LexicalItem(category="np", citation="American", pos="noun"))
    assert list(enumerate_paths(lattice)) == [("American",), ("Americans",)]


def test_inner_capitals_are_kept():
    """Test a head with capitals after its first letter keeps them when inflected"""
    lattice = item_lattice(LexicalItem(category="np", citation="McDonald", pos="noun"))
    assert list(enumerate_paths(lattice)) == [("McDonald",), ("McDonalds",)]


def test_leaf_synonym_concept():
    """Test a |gun, arm| leaf uses the entries of both synonyms"""
    lexicon = load_lexicon('(|gun| (np "gun" noun))\n(|arm| (np "arm" noun))')
    estructure = leaf_estructure("gun, arm", lexicon)
    assert estructure.categories == ["np"]
    assert list(enumerate_paths(estructure.get("np"))) == [("gun",), ("guns",), ("arm",), ("arms",)]


def test_leaf_missing_from_lexicon(toy_lexicon):
    """Test the error names the missing concept"""
    with pytest.raises(RealizationError, match=r"\|bicycle\|"):
        leaf_estructure("bicycle", toy_lexicon)


def test_eval_expr_failure_and_or():
    """Test a missing category fails and an Or keeps its succeeding branch"""
    estructs = {"x1": EStructure(entries={"np": wrd("she")})}
    assert eval_expr(SlotRef(slot="x1", category="s"), estructs) is None
    expr = Or(alternatives=(SlotRef(slot="x1", category="s"), SlotRef(slot="x1", category="np")))
    assert list(enumerate_paths(eval_expr(expr, estructs))) == [("she",)]


def test_estructure_categories_from_sample_rule():
    """Test an agent-patient node gets every category of the sample rule"""
    grammar = load_grammar(SAMPLE_RULE)
    lexicon = load_lexicon(SAMPLE_LEXICON)
    node = parse_spl("(A / |accuse| :AGENT SHE :PATIENT (M / |motorcar|))")
    estructure = build_estructure(node, grammar, lexicon)
    assert estructure.categories == ["s", "inf", "inf-raise", "np"]
    assert ("accusation", "of", "the", "car", "by", "she") in set(enumerate_paths(estructure.get("np")))


def test_see_lattice_paths(toy_grammar, toy_lexicon, irregular, see_node):
    """Test the case and tense over-generating lattice has exactly the expected sentences"""
    lattice = realize(see_node, toy_grammar, toy_lexicon, exceptions=irregular)
    expected = {
        (subject, verb, obj)
        for subject in ("he", "him")
        for verb in ("saw", "sees")
        for obj in ("I", "me")
    }
    assert count_paths(lattice) == 8
    assert set(enumerate_paths(lattice)) == expected


def test_accuse_lattice(toy_grammar, toy_lexicon, irregular, accuse_node):
    """Test the nested accuse input realizes with the grammar defaults first"""
    lattice = realize(accuse_node, toy_grammar, toy_lexicon, exceptions=irregular)
    paths = set(enumerate_paths(lattice))
    assert count_paths(lattice) == 1600
    assert ("she", "charged", "that", "he", "stole", "the", "car") in paths
    assert ("her", "accuses", "for", "him", "to", "thieve", "autos") in paths
    assert ("the", "auto", "was", "stolen", "by", "him") not in paths
    assert default_path(lattice) == ("she", "accuses", "that", "he", "steals", "the", "auto")


def test_rest_recursion(toy_grammar, toy_lexicon, irregular, data_dir):
    """Test a :time role is realized through the :rest slot"""
    node = parse_spl((data_dir / "yesterday.spl").read_text(encoding="utf-8"))
    lattice = realize(node, toy_grammar, toy_lexicon, exceptions=irregular)
    paths = set(enumerate_paths(lattice))
    assert ("she", "yesterday", "charged", "the", "car") in paths
    assert ("the", "car", "was", "accused", "yesterday", "by", "her") in paths
    assert default_path(lattice) == ("she", "yesterday", "accuses", "the", "auto")


def test_realize_missing_goal(toy_grammar, toy_lexicon, see_node):
    """Test asking for a category the root does not produce"""
    with pytest.raises(RealizationError, match="adv"):
        realize(see_node, toy_grammar, toy_lexicon, goal="adv")


def test_realize_single_leaf():
    """Test a leaf with one rendering realized as np has one path"""
    grammar = load_grammar("(categories s np)\n((x1 :agent) -> (s (x1 np)))")
    lexicon = load_lexicon('(|dog| (np "dog" pron))')
    lattice = realize(parse_spl("(D / |dog|)"), grammar, lexicon, goal="np")
    assert list(enumerate_paths(lattice)) == [("dog",)]


def test_all_alternatives_fail(toy_grammar, toy_lexicon):
    """Test a node no rule can realize is an error"""
    node = parse_spl("(A / |motorcar| :TIME YESTERDAY)")
    with pytest.raises(RealizationError, match="no grammar rule realizes"):
        realize(node, toy_grammar, toy_lexicon)


def test_new_alternative_never_removes_paths(toy_lexicon, irregular, see_node, data_dir):
    """Test adding a rule alternative only adds sentences"""
    text = (data_dir / "toy.grammar").read_text(encoding="utf-8")
    extended = text.replace(
        '(s (seq (x1 np) (x3 v-tensed) (x2 np)))',
        '(s (seq (x1 np) (x3 v-tensed) (x2 np)))\n    (s (seq (x2 np) (wrd "was") (x3 v-tensed) (x1 np)))',
        1,
    )
    before = set(enumerate_paths(realize(see_node, load_grammar(text), toy_lexicon, exceptions=irregular)))
    after = set(enumerate_paths(realize(see_node, load_grammar(extended), toy_lexicon, exceptions=irregular)))
    assert before < after


@pytest.mark.parametrize("spl_file", ["accuse.spl", "see.spl", "yesterday.spl"])
def test_default_matches_first_alternative(toy_grammar, toy_lexicon, irregular, data_dir, spl_file):
    """Test DEFAULT extraction equals the lattice-free first-alternative derivation"""
    node = parse_spl((data_dir / spl_file).read_text(encoding="utf-8"))
    lattice = realize(node, toy_grammar, toy_lexicon, exceptions=irregular)
    assert default_path(lattice) == first_alternative(node, toy_grammar, toy_lexicon, exceptions=irregular)
