"""Parser and writer for the line-oriented algebra description format.

Grammar (UTF-8, one directive per line, '#' starts a comment):

    field (Q | F <prime>)
    group (trivial | Z <k>)
    vertices <name>+
    arrow <name> <src> <dst> [<int>{k}]    # weight vector, required iff k >= 1
    truncate <N>
    rel <term> (+ <term>)*                 # term := [<coeff>*]<arrow>(*<arrow>)*
    idempotent f = <vertex>+               # optional; names the corner part

Coefficients are decimal integers, or fractions a/b over Q.  Paths are
written in composition order (b*a means "first a, then b").
"""

import re
from fractions import Fraction

from .algebra import AlgebraPresentation, PresentationError
from .fields import QQ, PrimeField, is_prime, scalar_to_json
from .quiver import Quiver

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$|^[0-9]+$")
_ARROW_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_NUM_RE = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


class AlgebraFileError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


def _tokenize(text):
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def parse_algebra(text):
    """Parse an algebra description into an AlgebraPresentation."""
    lines = _tokenize(text)
    field = QQ
    group_rank = 0
    vertices = None
    arrows = []
    weights = {}
    truncation = None
    relations = []
    f_vertices = None
    seen = set()

    # field and group first: arrow lines need the group rank
    for lineno, toks in lines:
        key = toks[0]
        if key == "field":
            if "field" in seen:
                raise AlgebraFileError("duplicate field line", lineno)
            seen.add("field")
            if len(toks) == 2 and toks[1] == "Q":
                field = QQ
            elif len(toks) == 3 and toks[1] == "F":
                if not toks[2].isdigit() or not is_prime(int(toks[2])):
                    raise AlgebraFileError("modulus %r is not prime" % toks[2], lineno)
                field = PrimeField(int(toks[2]))
            else:
                raise AlgebraFileError("expected 'field Q' or 'field F <prime>'", lineno)
        elif key == "group":
            if "group" in seen:
                raise AlgebraFileError("duplicate group line", lineno)
            seen.add("group")
            if len(toks) == 2 and toks[1] == "trivial":
                group_rank = 0
            elif len(toks) == 3 and toks[1] == "Z":
                try:
                    group_rank = int(toks[2])
                except ValueError:
                    raise AlgebraFileError("bad group rank %r" % toks[2], lineno)
                if group_rank < 1:
                    raise AlgebraFileError("group rank must be >= 1 (or 'trivial')", lineno)
            else:
                raise AlgebraFileError("expected 'group trivial' or 'group Z <k>'", lineno)

    for lineno, toks in lines:
        key = toks[0]
        if key in ("field", "group"):
            continue
        if key == "vertices":
            if vertices is not None:
                raise AlgebraFileError("duplicate vertices line", lineno)
            if len(toks) < 2:
                raise AlgebraFileError("vertices line needs at least one name", lineno)
            vertices = toks[1:]
            for v in vertices:
                if not _NAME_RE.match(v):
                    raise AlgebraFileError("bad vertex name %r" % v, lineno)
        elif key == "arrow":
            expected = 4 + group_rank
            if len(toks) != expected:
                raise AlgebraFileError(
                    "arrow line needs name, source, target and %d weight "
                    "component(s)" % group_rank, lineno)
            name, src, dst = toks[1], toks[2], toks[3]
            if not _ARROW_RE.match(name):
                raise AlgebraFileError("bad arrow name %r" % name, lineno)
            try:
                w = tuple(int(x) for x in toks[4:])
            except ValueError:
                raise AlgebraFileError("bad weight vector on arrow %s" % name, lineno)
            arrows.append((name, src, dst))
            weights[name] = w
        elif key == "truncate":
            if truncation is not None:
                raise AlgebraFileError("duplicate truncate line", lineno)
            try:
                truncation = int(toks[1]) if len(toks) == 2 else None
            except ValueError:
                truncation = None
            if truncation is None:
                raise AlgebraFileError("expected 'truncate <N>'", lineno)
            if truncation < 2:
                raise AlgebraFileError("truncation must be at least 2", lineno)
        elif key == "rel":
            relations.append((lineno, toks[1:]))
        elif key == "idempotent":
            if f_vertices is not None:
                raise AlgebraFileError("duplicate idempotent line", lineno)
            if len(toks) < 4 or toks[1] != "f" or toks[2] != "=":
                raise AlgebraFileError("expected 'idempotent f = <vertex>+'", lineno)
            f_vertices = toks[3:]
        else:
            raise AlgebraFileError("unknown directive %r" % key, lineno)

    if vertices is None:
        raise AlgebraFileError("missing vertices line")
    if truncation is None:
        raise AlgebraFileError("missing truncate line")

    try:
        quiver = Quiver(vertices, arrows)
    except ValueError as exc:
        raise AlgebraFileError(str(exc))

    parsed_rels = [_parse_relation(toks, lineno, field, quiver)
                   for lineno, toks in relations]

    try:
        return AlgebraPresentation(quiver, group_rank, weights, field,
                                   parsed_rels, truncation, f_vertices=f_vertices)
    except PresentationError as exc:
        raise AlgebraFileError(str(exc))


def _parse_relation(tokens, lineno, field, quiver):
    """Parse 'rel' payload tokens: terms separated by '+' tokens."""
    terms = []
    current = []
    for tok in tokens:
        if tok == "+":
            if not current:
                raise AlgebraFileError("empty relation term", lineno)
            terms.append(current)
            current = []
        else:
            current.append(tok)
    if not current:
        raise AlgebraFileError("relation ends with '+'", lineno)
    terms.append(current)

    parsed = []
    for term in terms:
        if len(term) != 1:
            raise AlgebraFileError("relation term must be a single product", lineno)
        factors = term[0].split("*")
        coeff = field.one
        if _NUM_RE.match(factors[0]):
            text = factors[0]
            if "/" in text:
                if field is not QQ:
                    raise AlgebraFileError(
                        "fraction coefficients are only allowed over Q", lineno)
                coeff = Fraction(text)
            else:
                coeff = field.of(int(text))
            factors = factors[1:]
        if not factors:
            raise AlgebraFileError("relation term has no arrows", lineno)
        for name in factors:
            if name not in quiver.arrow_by_name:
                raise AlgebraFileError("unknown arrow %r" % name, lineno)
        parsed.append((coeff, tuple(factors)))
    return parsed


def parse_algebra_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def format_algebra(pres):
    """Serialize a presentation back into the line format (round-trippable)."""
    lines = []
    if pres.field is QQ or pres.field == QQ:
        lines.append("field Q")
    else:
        lines.append("field F %d" % pres.field.p)
    if pres.group_rank == 0:
        lines.append("group trivial")
    else:
        lines.append("group Z %d" % pres.group_rank)
    lines.append("vertices " + " ".join(pres.quiver.vertices))
    for a in pres.quiver.arrows:
        w = " ".join(str(x) for x in pres.weights[a.name])
        lines.append(("arrow %s %s %s %s" % (a.name, a.source, a.target, w)).rstrip())
    lines.append("truncate %d" % pres.truncation)
    for terms in pres.relations:
        bits = []
        for c, p in terms:
            factors = "*".join(p.arrows)
            cj = scalar_to_json(c)
            if cj == 1:
                bits.append(factors)
            else:
                bits.append("%s*%s" % (cj, factors))
        lines.append("rel " + " + ".join(bits))
    if pres.f_vertices is not None:
        lines.append("idempotent f = " + " ".join(pres.f_vertices))
    return "\n".join(lines) + "\n"
