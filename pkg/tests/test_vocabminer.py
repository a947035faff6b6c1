import numpy as np
import pytest

from iconforge import Raster
from iconforge.vocabminer import (LabeledIcon, LabelGraph, group_labels,
                                  label_graph_components, levenshtein,
                                  lexical_similarity, mine_rules, parse_corpus,
                                  visual_similarity)
from helpers import brute_rules


def solid(rgb, size=8):
    return Raster.solid(size, size, (*rgb, 255))


# ---------------------------------------------------------------------------
# similarity

def test_visual_similarity_extremes():
    black = solid((0, 0, 0), size=64)
    assert visual_similarity(black, black) == 1.0
    assert visual_similarity(black, solid((255, 255, 255), size=64)) == 0.0


def test_visual_similarity_half_difference():
    a = solid((0, 0, 0), size=64)
    b = solid((0, 0, 0), size=64)
    b.pixels[:, 32:, :3] = 255
    assert abs(visual_similarity(a, b) - 0.5) < 1e-12


def test_visual_similarity_resizes_first():
    assert visual_similarity(solid((0, 0, 0), size=16), solid((0, 0, 0), size=64)) == 1.0


def test_levenshtein_and_lexical():
    assert levenshtein("abc", "abd") == 1
    assert abs(lexical_similarity("abc", "abd") - 2 / 3) < 1e-12
    assert lexical_similarity("a", "") == 0.0
    assert lexical_similarity("", "") == 1.0
    assert lexical_similarity("same", "same") == 1.0
    assert levenshtein("crop", "crops") == 1
    assert lexical_similarity("crop", "crops") == 1 - 1 / 5


def test_lexical_similarity_symmetric():
    words = ["menu", "mail", "male", "search", "sear", "x", ""]
    for a in words:
        for b in words:
            assert lexical_similarity(a, b) == lexical_similarity(b, a)


# ---------------------------------------------------------------------------
# grouping

def test_group_labels_rules():
    # sim_vis tolerates moderate gray error (0.9 means RMS <= ~80), so the
    # non-matching representatives need to sit far apart on the gray axis
    shared = solid((0, 0, 0))
    corpus = [
        LabeledIcon("i1", ("crop",), raster=shared),
        LabeledIcon("i2", ("crops",), raster=shared.copy()),   # vis 1.0 groups them
        LabeledIcon("i3", ("banana",), raster=solid((128, 128, 128))),
        LabeledIcon("i4", ("bananas",), raster=solid((255, 255, 255))),  # text 6/7 < 0.9
    ]
    assert group_labels(corpus) == [("crop", "crops")]

    # same labels on dissimilar rasters: lexical 4/5 alone is not enough
    apart = [LabeledIcon("i1", ("crop",), raster=solid((0, 0, 0))),
             LabeledIcon("i2", ("crops",), raster=solid((255, 255, 255)))]
    assert group_labels(apart) == []

    # near-identical long labels pass on text similarity without rasters
    texty = [LabeledIcon("i1", ("navigation",)), LabeledIcon("i2", ("navigations",))]
    assert group_labels(texty) == [("navigation", "navigations")]


# ---------------------------------------------------------------------------
# rule mining

def test_mine_rules_worked_example():
    corpus = []
    corpus += [LabeledIcon(f"ab{i}", ("a", "b")) for i in range(5)]
    corpus += [LabeledIcon(f"a{i}", ("a",)) for i in range(15)]      # a total: 20
    corpus += [LabeledIcon(f"b{i}", ("b",)) for i in range(25)]      # b total: 30
    corpus += [LabeledIcon(f"c{i}", ("c",)) for i in range(955)]
    rules, graph = mine_rules(corpus, t_sup=0.001, t_conf=0.2)

    assert len(rules) == 1
    rule = rules[0]
    assert (rule.antecedent, rule.consequent) == ("a", "b")
    assert abs(rule.support - 0.005) < 1e-15
    assert abs(rule.confidence - 0.25) < 1e-12
    assert graph.nodes == ("a", "b")
    assert graph.edges == (("a", "b"),)


def test_mine_rules_validation():
    with pytest.raises(ValueError):
        mine_rules([])
    corpus = [LabeledIcon("i", ("a",))]
    with pytest.raises(ValueError):
        mine_rules(corpus, t_sup=-0.1)
    with pytest.raises(ValueError):
        mine_rules(corpus, t_conf=1.5)


def test_mine_rules_matches_brute_force():
    rng = np.random.default_rng(17)
    pool = [f"tag{i}" for i in range(8)]
    corpus = []
    for i in range(60):
        count = int(rng.integers(1, 4))
        labels = tuple(rng.choice(pool, size=count, replace=False))
        corpus.append(LabeledIcon(f"icon{i}", labels))
    rules, graph = mine_rules(corpus, t_sup=0.01, t_conf=0.2)
    got = [(r.antecedent, r.consequent, r.support, r.confidence) for r in rules]
    assert got == brute_rules(corpus, 0.01, 0.2)

    # emitted rules always honor both thresholds
    for r in rules:
        assert r.support >= 0.01 and r.confidence >= 0.2
    # node set is exactly the union of rule endpoints
    assert set(graph.nodes) == {t for r in rules for t in (r.antecedent, r.consequent)}


# ---------------------------------------------------------------------------
# graph components

def test_components_examples():
    assert label_graph_components(LabelGraph(nodes=(), edges=())) == []
    graph = LabelGraph(nodes=("a", "b", "c", "d", "e"),
                       edges=(("a", "b"), ("b", "c"), ("d", "e")))
    assert label_graph_components(graph) == [["a", "b", "c"], ["d", "e"]]
    isolated = LabelGraph(nodes=("x", "y"), edges=())
    assert label_graph_components(isolated) == [["x"], ["y"]]


# ---------------------------------------------------------------------------
# corpus file format

def test_parse_corpus_reads_jsonl():
    text = '{"icon": "a.png", "labels": ["home", "house"]}\n\n' \
           '{"icon": "b.png", "labels": ["menu"]}\n'
    corpus = parse_corpus(text)
    assert [c.icon for c in corpus] == ["a.png", "b.png"]
    assert corpus[0].labels == ("home", "house")


@pytest.mark.parametrize("text, fragment", [
    ("{bad json\n", "line 1"),
    ('{"icon": "a.png"}\n', "line 1"),
    ('{"icon": "a.png", "labels": ["x"]}\n{"labels": ["y"]}\n', "line 2"),
    ('{"icon": "a.png", "labels": "x"}\n', "labels must be a list"),
    ("\n\n", "corpus is empty"),
])
def test_parse_corpus_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_corpus(text)
