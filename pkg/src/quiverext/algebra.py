"""Finite-dimensional quiver algebras KQ/I with exact normal forms.

The ideal I is given by relation generators: linear combinations of paths
of length >= 2 that, after splitting by (source, target), are homogeneous
for the weight grading.  The presentation carries a truncation bound N
with J^N contained in I (J the arrow ideal); this is checked, not assumed.

Normal forms are computed degreewise: for every (source, target, weight)
block, the span of all padded relation products p*r*q is put in reduced
row echelon form over the block's path monomials.  Pivot monomials reduce
to combinations of the non-pivot monomials, which form the basis of the
algebra.  All arithmetic is exact (Q or F_p).
"""

from .fields import scalar_to_json
from .linalg import Matrix
from .quiver import arrow_path, compose, vertex_path


class PresentationError(ValueError):
    pass


class AdmissibilityError(ValueError):
    """Some path of length N fails to reduce to zero."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            "ideal is not admissible at the stated truncation: "
            "path %r of length %d does not reduce to 0" % (witness, witness.length))


class AlgebraPresentation:
    """Quiver + weights + field + relations + truncation bound."""

    def __init__(self, quiver, group_rank, weights, field, relations, truncation,
                 f_vertices=None):
        self.quiver = quiver
        self.group_rank = int(group_rank)
        self.weights = dict(weights)
        self.field = field
        self.truncation = int(truncation)
        self.f_vertices = tuple(f_vertices) if f_vertices is not None else None
        if self.truncation < 2:
            raise PresentationError("truncation must be at least 2")
        if self.group_rank < 0:
            raise PresentationError("group rank must be nonnegative")
        for a in quiver.arrows:
            w = self.weights.get(a.name)
            if w is None:
                raise PresentationError("missing weight for arrow %s" % a.name)
            w = tuple(int(x) for x in w)
            if len(w) != self.group_rank:
                raise PresentationError("weight of arrow %s has wrong rank" % a.name)
            if self.group_rank >= 1 and all(x == 0 for x in w):
                raise PresentationError(
                    "arrow %s has identity weight; a proper grading needs "
                    "nonzero arrow weights" % a.name)
            self.weights[a.name] = w
        if self.f_vertices is not None:
            for v in self.f_vertices:
                if v not in quiver.vertices:
                    raise PresentationError("unknown vertex %r in idempotent line" % v)
            if len(set(self.f_vertices)) != len(self.f_vertices):
                raise PresentationError("repeated vertex in idempotent line")
        # relations: list of [(coeff, (arrow names...)), ...]
        self.relations = []
        for rel in relations:
            terms = []
            for coeff, names in rel:
                path = self.path_from_arrows(names)
                if path.length < 2:
                    raise PresentationError(
                        "relation term %r has length %d; relations must be "
                        "combinations of paths of length >= 2" % (path, path.length))
                terms.append((self.field.of(coeff), path))
            if terms:
                self.relations.append(terms)
        self.uniform_relations = self._split_uniform()

    def vertex_path(self, v):
        if v not in self.quiver.vertices:
            raise PresentationError("unknown vertex %r" % v)
        return vertex_path(v, self.group_rank)

    def arrow_path(self, name):
        arrow = self.quiver.arrow_by_name.get(name)
        if arrow is None:
            raise PresentationError("unknown arrow %r" % name)
        return arrow_path(arrow, self.weights[name])

    def path_from_arrows(self, names):
        """Build a path from arrow names in composition order."""
        if not names:
            raise PresentationError("empty path")
        path = self.arrow_path(names[-1])
        for name in reversed(names[:-1]):
            step = self.arrow_path(name)
            if step.source != path.target:
                raise PresentationError(
                    "arrows %s do not compose at %r" % ("*".join(names), name))
            path = compose(step, path)
        return path

    def _split_uniform(self):
        """Split every relation into uniform (source, target) pieces and
        check each piece is weight-homogeneous."""
        pieces = []
        for idx, terms in enumerate(self.relations):
            by_st = {}
            for c, p in terms:
                by_st.setdefault((p.source, p.target), []).append((c, p))
            for (s, t), piece in sorted(by_st.items()):
                weights = {p.weight for _, p in piece}
                if len(weights) > 1:
                    raise PresentationError(
                        "relation %d: uniform piece from %s to %s mixes weights %s"
                        % (idx + 1, s, t, sorted(weights)))
                pieces.append(UniformRelation(s, t, piece[0][1].weight, piece))
        return pieces

    @property
    def mixed_length_relations(self):
        """True when some uniform relation piece mixes path lengths."""
        return any(len({p.length for _, p in r.terms}) > 1 for r in self.uniform_relations)

    def opposite(self):
        """Arrows reversed, relation paths reversed, weights preserved."""
        rels = []
        for terms in self.relations:
            rels.append([(c, tuple(reversed(p.arrows))) for c, p in terms])
        return AlgebraPresentation(
            self.quiver.opposite(), self.group_rank, self.weights, self.field,
            rels, self.truncation, f_vertices=self.f_vertices)


class UniformRelation:
    __slots__ = ("source", "target", "weight", "terms", "min_length")

    def __init__(self, source, target, weight, terms):
        self.source = source
        self.target = target
        self.weight = weight
        self.terms = terms
        self.min_length = min(p.length for _, p in terms)


class AlgebraElement:
    """A linear combination of normal-form basis paths."""

    __slots__ = ("engine", "terms")

    def __init__(self, engine, terms):
        self.engine = engine
        self.terms = {p: c for p, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p, self.engine.field.zero) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return AlgebraElement(self.engine, out)

    def __sub__(self, other):
        return self + other.scaled(-self.engine.field.one)

    def scaled(self, c):
        return AlgebraElement(self.engine, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other):
        return self.engine.multiply(self, other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def weight(self):
        """The common weight of the terms, or None for 0 or inhomogeneous."""
        ws = {p.weight for p in self.terms}
        return next(iter(ws)) if len(ws) == 1 else None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms, key=lambda q: (q.length, q.arrows, q.source)):
            bits.append("%s*%s" % (self.terms[p], p))
        return " + ".join(bits)


class NormalFormEngine:
    """Monomial basis of KQ/I with exact reduction and multiplication."""

    def __init__(self, pres):
        self.pres = pres
        self.field = pres.field
        self.quiver = pres.quiver
        self.group_rank = pres.group_rank
        self.truncation = pres.truncation
        self.paths_by_length = self._enumerate_paths(pres.truncation)
        self._reduction = {}
        self.basis = []
        self._build()
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._check_admissible()
        self._opposite = None
        self._paths_from = {}
        for p in self.basis:
            self._paths_from.setdefault(p.source, []).append(p)

    # -- construction ------------------------------------------------------

    def _enumerate_paths(self, max_len):
        """All paths of length 0..max_len, grouped by length."""
        k = self.group_rank
        by_len = [[vertex_path(v, k) for v in self.quiver.vertices]]
        for _ in range(max_len):
            nxt = []
            for p in by_len[-1]:
                for a in self.quiver.arrows_from[p.target]:
                    nxt.append(compose(self.pres.arrow_path(a.name), p))
            by_len.append(nxt)
        return by_len

    def _padded_rows(self, cutoff):
        """Spanning vectors of the ideal, grouped by (source, target, weight).

        Every product p*r*q with a surviving term of length <= cutoff is
        included; terms longer than cutoff are dropped (they lie in the
        truncated part).
        """
        all_paths = [p for ps in self.paths_by_length for p in ps]
        by_target = {}
        by_source = {}
        for p in all_paths:
            by_target.setdefault(p.target, []).append(p)
            by_source.setdefault(p.source, []).append(p)
        blocks = {}
        for rel in self.pres.uniform_relations:
            for q in by_target.get(rel.source, []):
                if q.length + rel.min_length > cutoff:
                    continue
                for p in by_source.get(rel.target, []):
                    if p.length + q.length + rel.min_length > cutoff:
                        continue
                    row = {}
                    for c, t in rel.terms:
                        total = p.length + t.length + q.length
                        if total > cutoff:
                            continue
                        full = compose(p, compose(t, q))
                        row[full] = row.get(full, self.field.zero) + c
                    row = {path: c for path, c in row.items() if c}
                    if not row:
                        continue
                    any_path = next(iter(row))
                    key = (any_path.source, any_path.target, any_path.weight)
                    blocks.setdefault(key, []).append(row)
        return blocks

    @staticmethod
    def _block_columns(rows):
        cols = set()
        for row in rows:
            cols.update(row)
        return sorted(cols, key=lambda p: (p.length, p.arrows))

    def _build(self):
        n = self.truncation
        blocks = self._padded_rows(n - 1)
        pivot_paths = set()
        for key in sorted(blocks):
            rows = blocks[key]
            cols = self._block_columns(rows)
            col_index = {p: j for j, p in enumerate(cols)}
            mat = Matrix.zeros(self.field, len(rows), len(cols))
            for i, row in enumerate(rows):
                for p, c in row.items():
                    mat.rows[i][col_index[p]] = c
            red, pivots = mat.rref()
            for i, pc in enumerate(pivots):
                pivot_path = cols[pc]
                pivot_paths.add(pivot_path)
                expansion = {}
                for j in range(pc + 1, len(cols)):
                    v = red.rows[i][j]
                    if v:
                        expansion[cols[j]] = -v
                self._reduction[pivot_path] = expansion
        # resolve chains: a pivot's expansion may mention later pivots
        resolved = {}

        def resolve(p):
            if p in resolved:
                return resolved[p]
            exp = self._reduction[p]
            out = {}
            for q, c in exp.items():
                if q in self._reduction:
                    for t, d in resolve(q).items():
                        s = out.get(t, self.field.zero) + c * d
                        if s:
                            out[t] = s
                        else:
                            out.pop(t, None)
                else:
                    s = out.get(q, self.field.zero) + c
                    if s:
                        out[q] = s
                    else:
                        out.pop(q, None)
            resolved[p] = out
            return out

        for p in list(self._reduction):
            resolve(p)
        self._reduction = resolved
        for length in range(n):
            for p in self.paths_by_length[length]:
                if p not in pivot_paths:
                    self.basis.append(p)

    def _check_admissible(self):
        """Every path of length N must lie in I (computed one degree up)."""
        n = self.truncation
        blocks = self._padded_rows(n)
        reduced_blocks = {}
        for key, rows in blocks.items():
            cols = self._block_columns(rows)
            col_index = {p: j for j, p in enumerate(cols)}
            mat = Matrix.zeros(self.field, len(rows), len(cols))
            for i, row in enumerate(rows):
                for p, c in row.items():
                    mat.rows[i][col_index[p]] = c
            red, pivots = mat.rref()
            reduced_blocks[key] = (red, pivots, col_index)
        for p in self.paths_by_length[n]:
            key = (p.source, p.target, p.weight)
            if key not in reduced_blocks:
                raise AdmissibilityError(p)
            red, pivots, col_index = reduced_blocks[key]
            j = col_index.get(p)
            if j is None:
                raise AdmissibilityError(p)
            vec = [self.field.zero] * len(col_index)
            vec[j] = self.field.one
            for i, pc in enumerate(pivots):
                if vec[pc]:
                    f = vec[pc]
                    vec = [a - f * b for a, b in zip(vec, red.rows[i])]
            if any(vec):
                raise AdmissibilityError(p)

    # -- reduction and arithmetic -----------------------------------------

    def nf_path(self, path):
        """Normal form of a single path, as {basis path: coeff}."""
        if path.length >= self.truncation:
            return {}
        red = self._reduction.get(path)
        if red is None:
            return {path: self.field.one}
        return dict(red)

    def nf_terms(self, terms):
        out = {}
        for p, c in terms.items():
            if not c:
                continue
            for q, d in self.nf_path(p).items():
                s = out.get(q, self.field.zero) + c * d
                if s:
                    out[q] = s
                else:
                    out.pop(q, None)
        return out

    def element(self, terms):
        """Normalize a {path: coeff} mapping into an AlgebraElement."""
        return AlgebraElement(self, self.nf_terms(terms))

    def zero(self):
        return AlgebraElement(self, {})

    def vertex_element(self, v):
        return self.element({self.pres.vertex_path(v): self.field.one})

    def arrow_element(self, name):
        return self.element({self.pres.arrow_path(name): self.field.one})

    def path_element(self, names):
        return self.element({self.pres.path_from_arrows(names): self.field.one})

    def one(self):
        k = self.group_rank
        return self.element({vertex_path(v, k): self.field.one for v in self.quiver.vertices})

    def multiply_paths(self, p, q):
        """Normal form of p*q (first q, then p)."""
        if q.target != p.source:
            return {}
        if p.length + q.length >= self.truncation:
            return {}
        return self.nf_path(compose(p, q))

    def multiply(self, x, y):
        out = {}
        for p, c in x.terms.items():
            for q, d in y.terms.items():
                cd = c * d
                for t, e in self.multiply_paths(p, q).items():
                    s = out.get(t, self.field.zero) + cd * e
                    if s:
                        out[t] = s
                    else:
                        out.pop(t, None)
        return AlgebraElement(self, out)

    # -- structure ---------------------------------------------------------

    def basis_paths_from(self, v):
        """Normal-form paths with source v (the basis of the projective at v)."""
        return list(self._paths_from.get(v, []))

    def basis_paths_between(self, sources, targets):
        src = set(sources)
        tgt = set(targets)
        return [p for p in self.basis if p.source in src and p.target in tgt]

    def radical_basis(self):
        return [p for p in self.basis if p.length >= 1]

    @property
    def opposite_engine(self):
        if self._opposite is None:
            self._opposite = NormalFormEngine(self.pres.opposite())
        return self._opposite

    def __repr__(self):
        return "NormalFormEngine(dim=%d, vertices=%d)" % (self.dim, len(self.quiver.vertices))


def build_engine(pres):
    return NormalFormEngine(pres)


def element_to_json(x):
    return [{"path": list(p.arrows) if not p.is_vertex else ["e", p.source],
             "coeff": scalar_to_json(c)}
            for p, c in sorted(x.terms.items(), key=lambda t: (t[0].length, t[0].arrows))]
