"""Read and write the line-based system file format.

A file holds one polynomial system plus optional run configuration:

    # comment
    field 10007
    vars w x y z
    order drl
    poly x^2 - x
    poly x*y - 1
    fieldeqs
    homvar t

field and vars must precede the poly lines (coefficients reduce mod p
at parse time); fieldeqs asks for the field equations x_i^p - x_i to be
appended before computing; homvar names the homogenizing variable. A
single-line string with " / " separators is accepted as a compact
spelling of the same format.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import UsageError
from .ffield import PrimeField
from .polyring import PolySystem, TermOrder, format_poly, parse_poly


@dataclass
class SystemFile:
    """A parsed system file: the system plus its optional run configuration."""

    system: PolySystem
    order: TermOrder = None
    field_equations: bool = False
    homvar: str = "x0"


def loads(text):
    """Parse system-file text into a SystemFile."""
    lines = text.splitlines()
    if len(lines) <= 1 and " / " in text:
        lines = text.split(" / ")
    p = None
    names = None
    order_line = None
    field_equations = False
    homvar = "x0"
    poly_lines = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "field":
            if p is not None:
                raise UsageError(f"line {lineno}: duplicate field line")
            try:
                p = int(rest)
            except ValueError:
                raise UsageError(f"line {lineno}: field wants an integer, got {rest!r}") from None
        elif word == "vars":
            if names is not None:
                raise UsageError(f"line {lineno}: duplicate vars line")
            names = rest.split()
            if not names:
                raise UsageError(f"line {lineno}: vars line needs at least one name")
        elif word == "order":
            if not rest:
                raise UsageError(f"line {lineno}: order line needs a token")
            order_line = (lineno, rest)
        elif word == "fieldeqs":
            if rest:
                raise UsageError(f"line {lineno}: fieldeqs takes no argument")
            field_equations = True
        elif word == "homvar":
            if not rest or len(rest.split()) != 1:
                raise UsageError(f"line {lineno}: homvar wants exactly one name")
            homvar = rest
        elif word == "poly":
            if not rest:
                raise UsageError(f"line {lineno}: poly line needs an expression")
            poly_lines.append((lineno, rest))
        else:
            raise UsageError(f"line {lineno}: unknown directive {word!r}")
    if p is None:
        raise UsageError("missing field line")
    if names is None:
        raise UsageError("missing vars line")
    if not poly_lines:
        raise UsageError("a system file needs at least one poly line")
    field = PrimeField(p)
    gens = []
    for lineno, src in poly_lines:
        try:
            gens.append(parse_poly(src, names, p))
        except UsageError as e:
            raise UsageError(f"line {lineno}: {e}") from None
    try:
        system = PolySystem(gens, field, names)
    except UsageError as e:
        raise UsageError(str(e)) from None
    order = None
    if order_line is not None:
        lineno, token = order_line
        try:
            order = TermOrder.parse_token(token, names)
        except UsageError as e:
            raise UsageError(f"line {lineno}: {e}") from None
    return SystemFile(system=system, order=order,
                      field_equations=field_equations, homvar=homvar)


def load(path):
    """Parse the system file at path."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    except UnicodeDecodeError as e:
        raise UsageError(f"{path} is not UTF-8 text: {e}") from None
    return loads(text)


def parse_system(source):
    """The system from a file path or inline text."""
    text = str(source)
    if "\n" in text or " / " in text or text.lstrip().startswith(("field", "#")):
        return loads(text).system
    return load(text).system


def dumps(system, order=None, field_equations=False, homvar="x0"):
    """Render a system (or SystemFile) back to file text."""
    if isinstance(system, SystemFile):
        order = system.order
        field_equations = system.field_equations
        homvar = system.homvar
        system = system.system
    lines = [f"field {system.p}", "vars " + " ".join(system.names)]
    if order is not None:
        lines.append("order " + order.token(system.names))
    if field_equations:
        lines.append("fieldeqs")
    if homvar != "x0":
        lines.append(f"homvar {homvar}")
    for f in system.gens:
        lines.append("poly " + format_poly(f, system.names))
    return "\n".join(lines) + "\n"
