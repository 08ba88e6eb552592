"""Minimal markdown-to-HTML conversion for documentation bodies.

Supported constructs: `#` to `###` headings, blank-line-separated
paragraphs, `**bold**`, backtick code spans, `- ` bullet lists, and
`[text](url)` links. Everything is HTML-escaped before any tag is
inserted, so the output never contains raw markup from the input;
unknown constructs pass through as escaped text.
"""

from __future__ import annotations

import re

_HEADING = re.compile(r"^(#{1,3}) (.*)$")
_INLINE = re.compile(
    r"`[^`]*`"
    r"|\*\*[^*]+\*\*"
    r"|\[[^\]]*\]\([^)]*\)")
_LINK = re.compile(r"\[([^\]]*)\]\(([^)]*)\)")


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _inline(text: str) -> str:
    escaped = _escape(text)
    out: list[str] = []
    pos = 0
    for match in _INLINE.finditer(escaped):
        out.append(escaped[pos:match.start()])
        piece = match.group(0)
        if piece.startswith("`"):
            out.append(f"<code>{piece[1:-1]}</code>")
        elif piece.startswith("**"):
            out.append(f"<strong>{piece[2:-2]}</strong>")
        else:
            link = _LINK.fullmatch(piece)
            assert link is not None
            out.append(f'<a href="{link.group(2)}">{link.group(1)}</a>')
        pos = match.end()
    out.append(escaped[pos:])
    return "".join(out)


def _blocks(markdown: str) -> list[list[str]]:
    blocks: list[list[str]] = []
    current: list[str] = []
    for line in markdown.split("\n"):
        if line.strip():
            current.append(line)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return blocks


def render_html(markdown: str) -> str:
    """Render the supported markdown subset as well-formed HTML."""
    elements: list[str] = []
    for block in _blocks(markdown):
        i = 0
        while i < len(block):
            line = block[i]
            heading = _HEADING.match(line)
            if heading is not None:
                level = len(heading.group(1))
                elements.append(
                    f"<h{level}>{_inline(heading.group(2))}</h{level}>")
                i += 1
                continue
            if line.startswith("- "):
                items = []
                while i < len(block) and block[i].startswith("- "):
                    items.append(f"<li>{_inline(block[i][2:])}</li>")
                    i += 1
                elements.append("<ul>" + "".join(items) + "</ul>")
                continue
            text_lines = []
            while i < len(block):
                line = block[i]
                if _HEADING.match(line) or line.startswith("- "):
                    break
                text_lines.append(line)
                i += 1
            elements.append(f"<p>{_inline(' '.join(text_lines))}</p>")
    return "\n".join(elements)


def first_paragraph(markdown: str) -> str:
    """The first non-blank block of a markdown body, as markdown text."""
    blocks = _blocks(markdown)
    return "\n".join(blocks[0]) if blocks else ""
