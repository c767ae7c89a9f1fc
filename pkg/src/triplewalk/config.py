"""Flat key=value run-configuration files.

One option per line, `name=value`, with the same names as the long CLI flags
(without the leading dashes). Blank lines and lines starting with `#` are
ignored. Values are kept as strings; the CLI applies the same converters it
uses for flags, and explicit flags override file values.
"""

from __future__ import annotations

__all__ = ["parse_config_text", "format_config", "load_config"]


def parse_config_text(text: str) -> dict[str, str]:
    """Parse config text to an ordered name -> value mapping.

    Raises
    ------
    ValueError
        On a non-blank, non-comment line without '=' or with an empty name.
    """
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected name=value, got {raw!r}")
        name, _, value = line.partition("=")
        name = name.strip()
        if not name:
            raise ValueError(f"config line {lineno}: empty option name")
        out[name] = value.strip()
    return out


def format_config(options: dict[str, str]) -> str:
    """Render options as config text; parse_config_text inverts this exactly."""
    lines = [f"{name}={value}" for name, value in options.items()]
    return "\n".join(lines) + ("\n" if lines else "")


def load_config(path: str) -> dict[str, str]:
    """Read and parse a config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())
