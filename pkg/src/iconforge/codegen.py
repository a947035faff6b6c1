"""HTML/CSS emission for composed icons.

Icons render as <i> elements whose classes select a glyph (by name) and a
color. The stylesheet maps each glyph class to its private-use codepoint via
a ::before content rule and defines one color class per named color.
"""

from __future__ import annotations

import html
from dataclasses import dataclass

from .colorizer import CANONICAL_RGB
from .tracer import GlyphManifest


def sanitize_label(label: str) -> str:
    """Lowercase, non-alphanumerics to '-', runs collapsed, edges trimmed."""
    out = []
    for ch in label.lower():
        out.append(ch if ch.isalnum() else "-")
    collapsed = []
    for ch in out:
        if ch == "-" and collapsed and collapsed[-1] == "-":
            continue
        collapsed.append(ch)
    return "".join(collapsed).strip("-")


@dataclass(frozen=True)
class CodeSnippet:
    html: str
    css_class: str
    color_class: str | None


def render_snippet(label: str, color: str) -> CodeSnippet:
    """One <i> element; color 'none' omits the color class."""
    slug = sanitize_label(label)
    if not slug:
        raise ValueError(f"label {label!r} has no usable characters")
    css_class = f"icon-{slug}"
    color_class = None if color == "none" else sanitize_label(color)
    if color_class is not None and not color_class:
        raise ValueError(f"color {color!r} has no usable characters")
    classes = css_class if color_class is None else f"{css_class} {color_class}"
    return CodeSnippet(html=f'<i class="{classes}"></i>',
                       css_class=css_class, color_class=color_class)


def _hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def render_css(manifest: GlyphManifest) -> str:
    """Stylesheet: @font-face, a ::before rule per glyph, and the color classes."""
    if not manifest.glyphs:
        raise ValueError("manifest has no glyphs")
    lines = [
        "@font-face {",
        f'  font-family: "{manifest.family}";',
        f'  src: url("{manifest.family}.woff") format("woff");',
        "}",
        "",
        '[class^="icon-"], [class*=" icon-"] {',
        f'  font-family: "{manifest.family}";',
        "  font-style: normal;",
        "}",
        "",
    ]
    for glyph in manifest.glyphs:
        lines.append(f'.icon-{glyph.name}::before {{ content: "\\{glyph.codepoint:04x}"; }}')
    lines.append("")
    for name, rgb in sorted(CANONICAL_RGB.items()):
        lines.append(f".{name} {{ color: {_hex(rgb)}; }}")
    lines.append("")
    return "\n".join(lines)


def render_gallery(title: str, entries: list[dict]) -> str:
    """Static preview page; each entry carries name, snippet, svg, color, label."""
    rows = []
    for e in entries:
        svg = e.get("svg", "")
        code = html.escape(e.get("snippet", ""))
        label = html.escape(e.get("label", ""))
        color = html.escape(e.get("color", "none"))
        name = html.escape(e.get("name", ""))
        rows.append(
            "    <figure>\n"
            f"      <div class=\"preview\">{svg}</div>\n"
            f"      <figcaption><strong>{name}</strong> &middot; {label} &middot; {color}</figcaption>\n"
            f"      <code>{code}</code>\n"
            "    </figure>"
        )
    body = "\n".join(rows)
    return (
        "<!DOCTYPE html>\n"
        "<html lang=\"en\">\n"
        "<head>\n"
        "  <meta charset=\"utf-8\">\n"
        f"  <title>{html.escape(title)}</title>\n"
        "  <link rel=\"stylesheet\" href=\"icons.css\">\n"
        "  <style>\n"
        "    body { font-family: sans-serif; margin: 2rem; }\n"
        "    figure { display: inline-block; margin: 1rem; text-align: center; }\n"
        "    .preview { width: 64px; height: 64px; margin: 0 auto; }\n"
        "    .preview svg { width: 100%; height: 100%; }\n"
        "    code { display: block; margin-top: .5rem; font-size: .8rem; }\n"
        "  </style>\n"
        "</head>\n"
        "<body>\n"
        f"  <h1>{html.escape(title)}</h1>\n"
        "  <section>\n"
        f"{body}\n"
        "  </section>\n"
        "</body>\n"
        "</html>\n"
    )
