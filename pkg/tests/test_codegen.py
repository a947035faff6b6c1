import pytest

from iconforge.codegen import render_css, render_gallery, render_snippet, sanitize_label
from iconforge.tracer import Polygon, build_glyph_set, smooth_polygon


def _manifest(names, family="icons"):
    outline = smooth_polygon(Polygon(vertices=((0, 0), (0, 1), (1, 1), (1, 0))))
    return build_glyph_set([(n, [outline], 16, 16) for n in names], family=family)


# ---------------------------------------------------------------------------
# sanitization

@pytest.mark.parametrize("raw, slug", [
    ("left", "left"),
    ("Left Arrow!", "left-arrow"),
    ("--a--b--", "a-b"),
    ("Ícone", "ícone"),      # isalnum covers unicode letters
    ("oval 1", "oval-1"),
])
def test_sanitize_label(raw, slug):
    assert sanitize_label(raw) == slug


def test_sanitize_can_empty_out():
    assert sanitize_label("!!!") == ""


# ---------------------------------------------------------------------------
# snippets

def test_snippet_goldens():
    assert render_snippet("left", "red").html == '<i class="icon-left red"></i>'
    assert render_snippet("information", "white").html == \
        '<i class="icon-information white"></i>'
    assert render_snippet("emoji", "blue").html == '<i class="icon-emoji blue"></i>'


def test_snippet_fields_and_none_color():
    snip = render_snippet("Left Arrow", "none")
    assert snip.html == '<i class="icon-left-arrow"></i>'
    assert snip.css_class == "icon-left-arrow"
    assert snip.color_class is None

    colored = render_snippet("home", "Red")
    assert colored.color_class == "red"


def test_snippet_rejects_unusable_labels():
    with pytest.raises(ValueError):
        render_snippet("!!!", "red")
    with pytest.raises(ValueError):
        render_snippet("home", "@@")


def test_snippet_deterministic():
    assert render_snippet("a b", "blue") == render_snippet("a b", "blue")


# ---------------------------------------------------------------------------
# stylesheet

def test_css_single_glyph():
    css = render_css(_manifest(["home"]))
    assert '.icon-home::before { content: "\\e000"; }' in css
    assert '@font-face' in css
    assert 'font-family: "icons";' in css


def test_css_rules_follow_manifest_order():
    css = render_css(_manifest(["zeta", "alpha", "mid"]))
    lines = [l for l in css.splitlines() if "::before" in l]
    assert lines == [
        '.icon-zeta::before { content: "\\e000"; }',
        '.icon-alpha::before { content: "\\e001"; }',
        '.icon-mid::before { content: "\\e002"; }',
    ]


def test_css_color_classes_emitted_once():
    css = render_css(_manifest(["a"]))
    for rule in (".black { color: #000000; }", ".blue { color: #0000ff; }",
                 ".lime { color: #bfff00; }", ".white { color: #ffffff; }"):
        assert css.count(rule) == 1


def test_css_empty_manifest_rejected():
    with pytest.raises(ValueError):
        render_css(_manifest([]))


# ---------------------------------------------------------------------------
# gallery

def test_gallery_escapes_and_embeds():
    page = render_gallery("My <Icons>", [
        {"name": "home", "snippet": '<i class="icon-home red"></i>',
         "svg": "<svg></svg>", "label": "home & hearth", "color": "red"},
    ])
    assert "My &lt;Icons&gt;" in page
    assert "&lt;i class=" in page           # snippet shown as text
    assert "<svg></svg>" in page            # preview embedded as markup
    assert "home &amp; hearth" in page
    assert page.count("<figure>") == 1
