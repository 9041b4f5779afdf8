"""Reader and writer for the sectioned ``.geom`` manifold file format.

Example::

    [manifold]
    name = example
    dim = 3
    param = a
    [frame]
    names = e1, e2, e3
    metric = identity
    [brackets]
    e1, e2 = (1+a) e3
    e2, e3 = 2 e1
    e3, e1 = (1-a) e2
    [contact]
    xi = e1
    phi e2 = e3
    phi e3 = -1 e2
    [soliton]
    V = e1
    p = p
    gradient = false
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional

import numpy as np

from .config import P_SYMBOL, ContactData, GeomDocument, SolitonConfig
from .frame import FrameManifold, scalar_array, zeros
from .scalar import ONE, Scalar, ScalarError, parse_scalar

__all__ = ["GeomParseError", "load_manifold", "load_manifold_file", "dump_manifold"]

SECTIONS = ("manifold", "frame", "brackets", "contact", "soliton")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class GeomParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _split_top_level(text: str, sep: str = "+") -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _parse_vector(text: str, names: list[str], param: Optional[str], lineno: int) -> np.ndarray:
    """Parse ``<scalar> <name> + <scalar> <name> + ...``; a bare ``0`` is the zero vector."""
    vec = zeros(len(names))
    if text.strip() == "0":
        return vec
    for term in _split_top_level(text):
        if not term:
            raise GeomParseError(f"empty term in {text!r}", lineno)
        head, _, name = term.rpartition(" ")
        if not head and name.startswith("-") and name[1:] in names:
            head, name = "-1", name[1:]
        if name not in names:
            raise GeomParseError(f"unknown frame vector {name!r}", lineno)
        try:
            coeff = parse_scalar(head, param) if head.strip() else ONE
        except ScalarError as exc:
            raise GeomParseError(str(exc), lineno) from None
        vec[names.index(name)] = vec[names.index(name)] + coeff
    return vec


def _scalar(text: str, param: Optional[str], lineno: int) -> Scalar:
    try:
        return parse_scalar(text, param)
    except ScalarError as exc:
        raise GeomParseError(str(exc), lineno) from None


def load_manifold(text: str) -> GeomDocument:
    """Parse and validate a manifold document.

    Raises :class:`GeomParseError` for syntax problems and
    :class:`~nkcontact.frame.FrameError` (incl. Jacobi failures) for invalid data.
    """
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in SECTIONS:
                raise GeomParseError(f"unknown section [{current}]", lineno)
            if current in sections:
                raise GeomParseError(f"duplicate section [{current}]", lineno)
            sections[current] = []
            continue
        if current is None:
            raise GeomParseError("content before the first section", lineno)
        sections[current].append((lineno, line))

    for required in ("manifold", "frame"):
        if required not in sections:
            raise GeomParseError(f"missing [{required}] section")

    head = {}
    for lineno, line in sections["manifold"]:
        key, eq, value = line.partition("=")
        if not eq:
            raise GeomParseError("expected 'key = value'", lineno)
        head[key.strip()] = (lineno, value.strip())
    unknown = set(head) - {"name", "dim", "param"}
    if unknown:
        raise GeomParseError(f"unknown [manifold] key {sorted(unknown)[0]!r}")
    name = head.get("name", (0, "unnamed"))[1]
    if "dim" not in head:
        raise GeomParseError("[manifold] needs dim")
    try:
        dim = int(head["dim"][1])
    except ValueError:
        raise GeomParseError("dim must be an integer", head["dim"][0]) from None
    param = head["param"][1] if "param" in head else None
    if param is not None:
        if not _IDENT.match(param):
            raise GeomParseError(f"bad parameter name {param!r}", head["param"][0])
        if param == P_SYMBOL:
            raise GeomParseError(f"'{P_SYMBOL}' is reserved for the soliton scalar", head["param"][0])

    names = None
    metric_lines = []
    metric_mode = None
    for lineno, line in sections["frame"]:
        key, eq, value = line.partition("=")
        if not eq:
            raise GeomParseError("expected 'key = value'", lineno)
        key = key.strip()
        if key == "names":
            names = [n.strip() for n in value.split(",")]
            if any(not _IDENT.match(n) for n in names):
                raise GeomParseError("frame names must be identifiers", lineno)
        elif key == "metric":
            metric_mode = value.strip()
            if metric_mode not in ("identity", "explicit"):
                raise GeomParseError("metric must be 'identity' or 'explicit'", lineno)
        elif key.split()[0] == "g" and len(key.split()) == 3:
            metric_lines.append((lineno, key.split()[1:], value))
        else:
            raise GeomParseError(f"unknown [frame] entry {key!r}", lineno)
    if names is None:
        raise GeomParseError("[frame] needs names")
    if len(names) != dim:
        raise GeomParseError(f"{len(names)} frame names for dim {dim}")
    if param in names:
        raise GeomParseError("parameter name clashes with a frame name")

    if metric_lines:
        if metric_mode == "identity":
            raise GeomParseError("metric = identity conflicts with explicit 'g' entries")
        metric = zeros(dim, dim)
        for lineno, (a, b), value in metric_lines:
            if a not in names or b not in names:
                raise GeomParseError("unknown frame vector in metric entry", lineno)
            i, j = names.index(a), names.index(b)
            s = _scalar(value, param, lineno)
            metric[i, j] = s
            metric[j, i] = s
    else:
        if metric_mode == "explicit":
            raise GeomParseError("metric = explicit needs 'g <u> <v> = ...' lines")
        metric = scalar_array(np.eye(dim, dtype=int))

    c = zeros(dim, dim, dim)
    seen = set()
    for lineno, line in sections.get("brackets", []):
        lhs, eq, rhs = line.partition("=")
        if not eq:
            raise GeomParseError("expected 'u, v = <vector>'", lineno)
        pair = [x.strip() for x in lhs.split(",")]
        if len(pair) != 2 or any(x not in names for x in pair):
            raise GeomParseError(f"bad bracket pair {lhs.strip()!r}", lineno)
        i, j = names.index(pair[0]), names.index(pair[1])
        if i == j:
            raise GeomParseError("[u, u] is always 0", lineno)
        if frozenset((i, j)) in seen:
            raise GeomParseError(f"bracket [{pair[0]},{pair[1]}] given twice", lineno)
        seen.add(frozenset((i, j)))
        vec = _parse_vector(rhs, names, param, lineno)
        c[:, i, j] = vec
        c[:, j, i] = -vec

    manifold = FrameManifold(name, dim, tuple(names), c, metric, param)

    contact = None
    if "contact" in sections:
        xi = None
        phi = zeros(dim, dim)
        for lineno, line in sections["contact"]:
            key, eq, value = line.partition("=")
            if not eq:
                raise GeomParseError("expected 'key = value'", lineno)
            words = key.split()
            if words == ["xi"]:
                xi = _parse_vector(value, names, param, lineno)
            elif len(words) == 2 and words[0] == "phi" and words[1] in names:
                phi[:, names.index(words[1])] = _parse_vector(value, names, param, lineno)
            else:
                raise GeomParseError(f"unknown [contact] entry {key.strip()!r}", lineno)
        if xi is None:
            raise GeomParseError("[contact] needs xi")
        contact = ContactData(xi, phi)

    soliton = None
    if "soliton" in sections:
        entries = {}
        for lineno, line in sections["soliton"]:
            key, eq, value = line.partition("=")
            if not eq:
                raise GeomParseError("expected 'key = value'", lineno)
            entries[key.strip()] = (lineno, value.strip())
        unknown = set(entries) - {"V", "p", "lambda", "gradient"}
        if unknown:
            raise GeomParseError(f"unknown [soliton] key {sorted(unknown)[0]!r}")
        if "V" not in entries:
            raise GeomParseError("[soliton] needs V")
        V = _parse_vector(entries["V"][1], names, param, entries["V"][0])
        p_text = entries.get("p", (0, P_SYMBOL))
        p = _scalar(p_text[1], P_SYMBOL, p_text[0])
        lam = None
        if "lambda" in entries:
            lam = _scalar(entries["lambda"][1], P_SYMBOL, entries["lambda"][0])
        grad_text = entries.get("gradient", (0, "false"))
        if grad_text[1].lower() not in ("true", "false"):
            raise GeomParseError("gradient must be true or false", grad_text[0])
        soliton = SolitonConfig(V, p, lam, grad_text[1].lower() == "true")

    return GeomDocument(manifold, contact, soliton)


def load_manifold_file(path) -> GeomDocument:
    return load_manifold(Path(path).read_text(encoding="utf-8"))


def _format_vector(vec, names) -> str:
    terms = []
    for name, s in zip(names, vec):
        if s.is_zero():
            continue
        text = str(s)
        if s == 1:
            terms.append(name)
        else:
            terms.append(f"({text}) {name}" if " " in text else f"{text} {name}")
    return " + ".join(terms) if terms else "0"


def dump_manifold(doc: GeomDocument) -> str:
    """Inverse of :func:`load_manifold` up to formatting."""
    m = doc.manifold
    names = list(m.frame_names)
    out = ["[manifold]", f"name = {m.name}", f"dim = {m.dim}"]
    if m.param:
        out.append(f"param = {m.param}")
    out += ["[frame]", f"names = {', '.join(names)}"]
    if m.is_orthonormal:
        out.append("metric = identity")
    else:
        out.append("metric = explicit")
        for i in range(m.dim):
            for j in range(i, m.dim):
                if not m.metric[i, j].is_zero():
                    out.append(f"g {names[i]} {names[j]} = {m.metric[i, j]}")
    out.append("[brackets]")
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            vec = m.c[:, i, j]
            if any(not s.is_zero() for s in vec):
                out.append(f"{names[i]}, {names[j]} = {_format_vector(vec, names)}")
    if doc.contact is not None:
        out += ["[contact]", f"xi = {_format_vector(doc.contact.xi, names)}"]
        for j in range(m.dim):
            col = doc.contact.phi[:, j]
            if any(not s.is_zero() for s in col):
                out.append(f"phi {names[j]} = {_format_vector(col, names)}")
    if doc.soliton is not None:
        cfg = doc.soliton
        out += ["[soliton]", f"V = {_format_vector(cfg.V, names)}", f"p = {cfg.p}"]
        if cfg.lam is not None:
            out.append(f"lambda = {cfg.lam}")
        out.append(f"gradient = {'true' if cfg.gradient else 'false'}")
    return "\n".join(out) + "\n"

