"""Corner algebras fAf for a vertex-set idempotent, presented two ways.

For a suitable idempotent pair (e, f) of complementary vertex sets, the
corner algebra is the span of normal-form paths between f-vertices.  Its
quiver presentation has the f-vertices as vertices and one arrow per
minimal f-path (an f-to-f path whose interior vertices all lie in e) with
nonzero normal form; relations are the kernel of the evaluation map onto
the corner, computed degreewise.  The canonical map is verified to be an
algebra isomorphism (dimension plus full multiplication table).

Also here: the exact restriction functor (tensoring with the corner
bimodule), the module of e-to-f paths, resolution transport, and the
exactness test for the right adjoint.
"""

from .algebra import AlgebraPresentation, NormalFormEngine
from .linalg import Matrix, Subspace
from .modules import (ModuleMap, Representation, projective_cover,
                      simple_module)
from .quiver import Quiver, compose, interior_vertices
from .resolution import MinimalResolution, projective_dimension


class IdempotentPair:
    """Complementary vertex sets (e, f); every f-to-e path has positive
    length, so the corner condition f*r*e inside the radical is automatic."""

    def __init__(self, engine, f_vertices):
        self.engine = engine
        vs = list(engine.quiver.vertices)
        f = list(f_vertices)
        for v in f:
            if v not in vs:
                raise ValueError("unknown vertex %r in idempotent" % v)
        if len(set(f)) != len(f):
            raise ValueError("repeated vertex in idempotent")
        if not f:
            raise ValueError("the corner part must contain at least one vertex")
        self.f_vertices = tuple(v for v in vs if v in set(f))
        self.e_vertices = tuple(v for v in vs if v not in set(f))
        # f Lambda e sits in the radical: its basis paths have length >= 1
        assert all(p.length >= 1 for p in
                   engine.basis_paths_between(self.e_vertices, self.f_vertices))

    def __repr__(self):
        return "IdempotentPair(f=%s, e=%s)" % (list(self.f_vertices), list(self.e_vertices))


def pair_from_presentation(engine):
    if engine.pres.f_vertices is None:
        raise ValueError("no idempotent line in the algebra description")
    return IdempotentPair(engine, engine.pres.f_vertices)


def _corner_arrow_name(paths):
    names = ["a_" + "".join(p.arrows) for p in paths]
    if len(set(names)) != len(names):
        names = ["a_" + "_".join(p.arrows) for p in paths]
    return names


class CornerPresentation:
    """Both forms of the corner algebra, with a verified isomorphism."""

    def __init__(self, engine, pair):
        self.engine = engine
        self.pair = pair
        self.f_basis = engine.basis_paths_between(pair.f_vertices, pair.f_vertices)
        self._f_index = {p: i for i, p in enumerate(self.f_basis)}
        self.dim = len(self.f_basis)
        self.arrow_paths = self._minimal_f_paths()
        self._verify_unique_factorization()
        self.nilpotency = self._radical_nilpotency()
        self.presentation, self.arrow_names = self._build_presentation()
        self.corner_engine = NormalFormEngine(self.presentation)
        self.theta = {}
        self._verify_isomorphism()

    # -- construction ------------------------------------------------------

    def _minimal_f_paths(self):
        """Minimal f-paths with nonzero normal form, reduced to a set that is
        linearly independent modulo the square of the corner radical."""
        eng = self.engine
        f = set(self.pair.f_vertices)
        e = set(self.pair.e_vertices)
        candidates = []
        for length in range(1, eng.truncation):
            for p in eng.paths_by_length[length]:
                if p.source in f and p.target in f \
                        and all(v in e for v in interior_vertices(p, eng.quiver)):
                    if eng.nf_path(p):
                        candidates.append(p)
        candidates.sort(key=lambda p: (p.length, p.arrows))
        # span of (corner radical)^2 in corner coordinates
        square = Subspace(eng.field, self.dim)
        positive = [p for p in self.f_basis if p.length >= 1]
        for p in positive:
            for q in positive:
                vec = self._nf_vector(eng.multiply_paths(p, q))
                if vec is not None and any(vec):
                    square.add(vec)
        kept = []
        seen = Subspace(eng.field, self.dim)
        for row in square.basis():
            seen.add(row)
        for p in candidates:
            vec = self._nf_vector(eng.nf_path(p))
            if vec is None:
                raise AssertionError("minimal f-path reduced outside the corner")
            if seen.add(vec):
                kept.append(p)
        return kept

    def _nf_vector(self, terms):
        vec = [self.engine.field.zero] * self.dim
        for p, c in terms.items():
            i = self._f_index.get(p)
            if i is None:
                return None
            vec[i] = vec[i] + c
        return vec

    def _factor(self, path):
        """Split an f-to-f path at every interior f-vertex visit; the pieces
        are minimal f-paths and the factorization is unique."""
        f = set(self.pair.f_vertices)
        arrows = list(reversed(path.arrows))  # traversal order
        pieces = []
        current = []
        for name in arrows:
            current.append(name)
            if self.engine.quiver.arrow_by_name[name].target in f:
                pieces.append(self.engine.pres.path_from_arrows(tuple(reversed(current))))
                current = []
        if current:
            raise AssertionError("path does not end at an f-vertex")
        return list(reversed(pieces))  # composition order: rightmost first

    def _verify_unique_factorization(self):
        """Every nonzero f-to-f basis path splits uniquely into minimal
        f-paths (the split points are forced: each interior f-visit), with
        all factors nonzero."""
        for p in self.f_basis:
            if p.length == 0:
                continue
            pieces = self._factor(p)
            recomposed = pieces[-1]
            for q in reversed(pieces[:-1]):
                recomposed = compose(q, recomposed)
            if recomposed != p:
                raise AssertionError("factorization does not recompose")
            for q in pieces:
                if not self.engine.nf_path(q):
                    raise AssertionError("factor of a nonzero path is zero")

    def _radical_nilpotency(self):
        """Smallest m with (corner radical)^m = 0."""
        eng = self.engine
        positive = [self._nf_vector(eng.nf_path(p))
                    for p in self.f_basis if p.length >= 1]
        power = positive
        m = 1
        while any(any(v) for v in power):
            nxt = []
            span = Subspace(eng.field, self.dim)
            for vec in power:
                for q in self.f_basis:
                    if q.length == 0:
                        continue
                    prod = [eng.field.zero] * self.dim
                    any_term = False
                    for i, c in enumerate(vec):
                        if not c:
                            continue
                        p = self.f_basis[i]
                        for t, d in eng.multiply_paths(p, q).items():
                            j = self._f_index[t]
                            prod[j] = prod[j] + c * d
                            any_term = True
                    if any_term and any(prod) and span.add(prod):
                        nxt.append(prod)
            power = nxt
            m += 1
            if m > eng.truncation + 1:
                raise AssertionError("corner radical fails to be nilpotent")
        return m

    def _eval_word(self, arrow_indices):
        """Normal form in the big algebra of a product of corner arrows."""
        eng = self.engine
        idx = arrow_indices[-1]
        acc = eng.nf_path(self.arrow_paths[idx])
        for i in reversed(arrow_indices[:-1]):
            p = self.arrow_paths[i]
            out = {}
            for q, c in acc.items():
                for t, d in eng.multiply_paths(p, q).items():
                    s = out.get(t, eng.field.zero) + c * d
                    if s:
                        out[t] = s
                    else:
                        out.pop(t, None)
            acc = out
        return acc

    def _build_presentation(self):
        eng = self.engine
        names = _corner_arrow_name(self.arrow_paths)
        arrows = [(name, p.source, p.target) for name, p in zip(names, self.arrow_paths)]
        weights = {name: p.weight for name, p in zip(names, self.arrow_paths)}
        quiver = Quiver(self.pair.f_vertices, arrows)
        trunc = max(self.nilpotency + 1, 2)
        # enumerate corner-quiver words of length 2..nilpotency and compute
        # the kernel of evaluation, blockwise by (source, target, weight)
        words = {1: [((i,), p) for i, p in enumerate(self.arrow_paths)]}
        for length in range(2, self.nilpotency + 1):
            nxt = []
            for idxs, p in words[length - 1]:
                for i, q in enumerate(self.arrow_paths):
                    if p.target == q.source:
                        nxt.append((idxs + (i,), compose(q, p)))
            words[length] = nxt
        blocks = {}
        for length in range(2, self.nilpotency + 1):
            for idxs, p in words[length]:
                key = (p.source, p.target, p.weight)
                blocks.setdefault(key, []).append(idxs)
        kernel_vectors = []
        block_columns = {}
        for key in sorted(blocks):
            idx_list = blocks[key]
            block_columns[key] = {w: j for j, w in enumerate(idx_list)}
            cols = [self._nf_vector(self._eval_word(list(reversed(idxs))))
                    for idxs in idx_list]
            mat = Matrix.from_columns(eng.field, cols, self.dim)
            for kv in mat.nullspace():
                row = {idx_list[j]: c for j, c in enumerate(kv) if c}
                kernel_vectors.append((min(len(w) for w in row), key, row))
        relations = self._reduce_generators(kernel_vectors, block_columns,
                                            words, names)
        pres = AlgebraPresentation(quiver, eng.group_rank, weights, eng.field,
                                   relations, trunc)
        return pres, names

    def _reduce_generators(self, kernel_vectors, block_columns, words, names):
        """Drop kernel vectors already generated by shorter chosen relations:
        a candidate is skipped when it lies in the span of the paddings
        x * r * y of the relations chosen so far."""
        eng = self.engine
        covered = {}
        path_of_word = {w: p for length in words for (w, p) in words[length]}
        # words usable for padding, keyed by endpoints; the empty word at a
        # vertex acts as that vertex idempotent
        into, out_of = {}, {}
        for v in self.pair.f_vertices:
            into.setdefault(v, []).append(())
            out_of.setdefault(v, []).append(())
        for length in words:
            for w, p in words[length]:
                into.setdefault(p.target, []).append(w)
                out_of.setdefault(p.source, []).append(w)

        def add_covered(row):
            w0 = next(iter(row))
            p = path_of_word[w0]
            key = (p.source, p.target, p.weight)
            cols = block_columns[key]
            vec = [eng.field.zero] * len(cols)
            for w, c in row.items():
                vec[cols[w]] = c
            if key not in covered:
                covered[key] = Subspace(eng.field, len(cols))
            covered[key].add(vec)

        def pad_and_cover(row, src, tgt):
            maxlen = self.nilpotency
            for yw in into.get(src, []):       # applied before the relation
                for xw in out_of.get(tgt, []):  # applied after
                    padded = {}
                    for w, c in row.items():
                        if len(yw) + len(w) + len(xw) > maxlen:
                            continue
                        pw = yw + w + xw
                        padded[pw] = padded.get(pw, eng.field.zero) + c
                    padded = {w: c for w, c in padded.items() if c}
                    if padded:
                        add_covered(padded)

        chosen = []
        for min_len, key, row in sorted(
                kernel_vectors,
                key=lambda t: (t[0], t[1], sorted(t[2]))):
            cols = block_columns[key]
            vec = [eng.field.zero] * len(cols)
            for w, c in row.items():
                vec[cols[w]] = c
            span = covered.get(key)
            if span is not None and span.contains(vec):
                continue
            src, tgt = key[0], key[1]
            chosen.append(row)
            pad_and_cover(row, src, tgt)
        relations = []
        for row in chosen:
            terms = []
            for w in sorted(row, key=lambda t: (len(t), t)):
                arrow_word = tuple(names[i] for i in reversed(w))
                terms.append((row[w], arrow_word))
            relations.append(terms)
        return relations

    # -- verification ------------------------------------------------------

    def _verify_isomorphism(self):
        """Check a_p -> nf(p) induces an isomorphism onto the corner:
        dimension equality, bijectivity, and the full multiplication table."""
        ce = self.corner_engine
        if ce.dim != self.dim:
            raise AssertionError(
                "corner presentation has dimension %d, but the corner has "
                "dimension %d" % (ce.dim, self.dim))
        name_to_idx = {n: i for i, n in enumerate(self.arrow_names)}
        for bp in ce.basis:
            if bp.is_vertex:
                self.theta[bp] = self.engine.nf_path(self.engine.pres.vertex_path(bp.source))
            else:
                # bp.arrows is already in composition order (rightmost first)
                self.theta[bp] = self._eval_word([name_to_idx[a] for a in bp.arrows])
        cols = [self._nf_vector(self.theta[bp]) for bp in ce.basis]
        if any(c is None for c in cols):
            raise AssertionError("corner image leaves the corner span")
        mat = Matrix.from_columns(self.engine.field, cols, self.dim)
        if mat.rank() != self.dim:
            raise AssertionError("corner evaluation map is not bijective")
        for x in ce.basis:
            for y in ce.basis:
                prod = ce.multiply_paths(x, y)
                lhs = self._push(prod)
                rhs = self._mult_corner(self.theta[x], self.theta[y])
                if lhs != rhs:
                    raise AssertionError(
                        "multiplication tables differ at %r * %r" % (x, y))

    def _push(self, corner_terms):
        out = {}
        for bp, c in corner_terms.items():
            for t, d in self.theta[bp].items():
                s = out.get(t, self.engine.field.zero) + c * d
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out

    def _mult_corner(self, xs, ys):
        eng = self.engine
        out = {}
        for p, c in xs.items():
            for q, d in ys.items():
                for t, e in eng.multiply_paths(p, q).items():
                    s = out.get(t, eng.field.zero) + c * d * e
                    if s:
                        out[t] = s
                    else:
                        out.pop(t, None)
        return out

    def witness_json(self):
        return [{"arrow": name, "path": list(p.arrows), "weight": list(p.weight)}
                for name, p in zip(self.arrow_names, self.arrow_paths)]

    def __repr__(self):
        return "CornerPresentation(dim=%d, arrows=%d)" % (self.dim, len(self.arrow_paths))


def corner_algebra(engine, pair):
    return CornerPresentation(engine, pair)


def f_lambda_e_module(corner):
    """The corner-algebra module of e-to-f paths, plus decomposition data.

    Returns (rep, check) where check carries the dimensions verifying that
    the f-row of the algebra splits as corner + (e-to-f part).
    """
    eng = corner.engine
    pair = corner.pair
    ce = corner.corner_engine
    basis = {}   # per f-vertex: ordered list of e-to-f paths
    for w in pair.f_vertices:
        paths = [p for p in eng.basis
                 if p.source in set(pair.e_vertices) and p.target == w]
        paths.sort(key=lambda p: (p.weight, p.length, p.arrows))
        basis[w] = paths
    degrees = {w: tuple(p.weight for p in basis[w]) for w in pair.f_vertices}
    index = {w: {p: i for i, p in enumerate(basis[w])} for w in pair.f_vertices}
    action = {}
    for name, ap in zip(corner.arrow_names, corner.arrow_paths):
        src, tgt = ap.source, ap.target
        m = Matrix.zeros(eng.field, len(basis[tgt]), len(basis[src]))
        for j, x in enumerate(basis[src]):
            for t, c in eng.multiply_paths(ap, x).items():
                m.rows[index[tgt][t]][j] = c
        action[name] = m
    rep = Representation(ce, degrees, action, check=True)
    dim_f_row = len([p for p in eng.basis if p.target in set(pair.f_vertices)])
    check = {
        "dim_f_row": dim_f_row,
        "dim_corner": corner.dim,
        "dim_e_to_f": rep.total_dim,
        "splits": dim_f_row == corner.dim + rep.total_dim,
    }
    return rep, check


def apply_F(corner, rep):
    """Restrict a module to the f-vertices; corner arrows act by the path
    action of their underlying paths.  This realizes the exact functor
    given by tensoring with the corner bimodule."""
    eng = corner.engine
    ce = corner.corner_engine
    degrees = {w: rep.degrees[w] for w in corner.pair.f_vertices}
    action = {}
    for name, ap in zip(corner.arrow_names, corner.arrow_paths):
        action[name] = rep.path_action(ap)
    return Representation(ce, degrees, action, check=True)


def apply_F_map(corner, mmap, source_F=None, target_F=None):
    """Restrict a module map to the f-vertices."""
    ce = corner.corner_engine
    src = source_F if source_F is not None else apply_F(corner, mmap.source)
    tgt = target_F if target_F is not None else apply_F(corner, mmap.target)
    blocks = {w: mmap.blocks[w] for w in corner.pair.f_vertices}
    return ModuleMap(src, tgt, blocks, grade=mmap.grade, check=False)


def corner_radical_subspace(corner, rep, vertex):
    """Span of the corner-arrow images inside rep's space at a vertex."""
    sub = Subspace(corner.engine.field, rep.dim(vertex))
    for name in corner.arrow_names:
        arrow = corner.corner_engine.quiver.arrow_by_name[name]
        if arrow.target != vertex:
            continue
        m = rep.action[name]
        for j in range(m.ncols):
            col = m.col(j)
            if any(col):
                sub.add(col)
    return sub


def transport_resolution(corner, res, cutoff, upto):
    """Apply the restriction functor to a minimal resolution beyond a cutoff.

    Checks that every term past the cutoff belongs to f, and that the
    transported complex is exact with differentials inside the corner
    radical (so it is again minimal).  Returns the transported terms and
    differentials for steps cutoff+1 .. upto.
    """
    from .resolution import belongs_to
    res.extend_to(upto)
    fset = set(corner.pair.f_vertices)
    terms = {}
    for n in range(cutoff + 1, upto + 1):
        if not belongs_to(res.summands(n), fset):
            raise ValueError(
                "term %d does not belong to f; transport needs a larger cutoff" % n)
        terms[n] = apply_F(corner, res.term(n).rep)
    diffs = {}
    for n in range(cutoff + 2, upto + 1):
        d = res.differential(n)
        diffs[n] = apply_F_map(corner, d, source_F=terms[n], target_F=terms[n - 1])
    # exactness and minimality of the transported tail
    for n in range(cutoff + 2, upto):
        if not diffs[n].compose(diffs[n + 1]).is_zero():
            raise AssertionError("transported differentials do not compose to zero")
        rank_hi = diffs[n + 1].rank()
        ker_lo = terms[n].total_dim - diffs[n].rank()
        if rank_hi != ker_lo:
            raise AssertionError("transported complex is not exact at step %d" % n)
    for n in range(cutoff + 2, upto + 1):
        for w in corner.pair.f_vertices:
            rad = corner_radical_subspace(corner, terms[n - 1], w)
            block = diffs[n].blocks[w]
            for j in range(block.ncols):
                col = block.col(j)
                if any(col) and not rad.contains(col):
                    raise AssertionError("transported differential leaves the radical")
    return terms, diffs


def is_H_exact(corner, bound=4, seed=0):
    """The right adjoint is exact iff the e-to-f module is corner-projective,
    i.e. its projective cover has zero kernel.  Returns (flag, witness)."""
    rep, check = f_lambda_e_module(corner)
    if rep.is_zero():
        return True, {"projective": True, "kernel_dim": 0, "cover": []}
    cov = projective_cover(corner.corner_engine, rep)
    flag = cov.kernel.is_zero()
    witness = {"projective": flag,
               "kernel_dim": cov.kernel.total_dim,
               "cover": cov.projective.to_json(),
               "decomposition": check}
    return flag, witness


def gexact_condition(corner, seed=0):
    """For a single e-vertex: if the simple there has projective dimension
    at most 1, then the e-to-f module has corner projective dimension at
    most 1 (and the right adjoint situation is as good as it gets).
    Reports both truth values; the conclusion is only claimed under the
    hypothesis."""
    pair = corner.pair
    if len(pair.e_vertices) != 1:
        raise ValueError("this check needs e to be a single vertex")
    v = pair.e_vertices[0]
    eng = corner.engine
    s = simple_module(eng, v)
    res = MinimalResolution(eng, s, seed=seed).extend_to(1)
    hypothesis = res.syzygy(2).is_zero()
    conclusion = None
    if hypothesis:
        rep, _ = f_lambda_e_module(corner)
        if rep.is_zero():
            conclusion = True
        else:
            cres = MinimalResolution(corner.corner_engine, rep, seed=seed).extend_to(1)
            conclusion = cres.syzygy(2).is_zero()
    return {"e_vertex": v, "hypothesis": hypothesis, "conclusion": conclusion}


def pd_finite_sufficient(corner, bound=40, seed=0):
    """If each e-simple has a finite resolution whose terms from step 1 on
    belong to f, conclude (and verify) that the e-to-f module has finite
    corner projective dimension."""
    from .resolution import belongs_to
    eng = corner.engine
    pair = corner.pair
    fset = set(pair.f_vertices)
    applicable = True
    details = []
    for v in pair.e_vertices:
        res = MinimalResolution(eng, simple_module(eng, v), seed=seed)
        verdict = res.pd_verdict(bound)
        ok = verdict.is_finite
        if ok:
            for n in range(1, verdict.value + 1):
                if not belongs_to(res.summands(n), fset):
                    ok = False
                    break
        details.append({"vertex": v, "pd": verdict.describe(), "hypothesis": ok})
        applicable = applicable and ok
    if not applicable:
        return {"applicable": False, "details": details, "conclusion": None}
    rep, _ = f_lambda_e_module(corner)
    verdict = projective_dimension(corner.corner_engine, rep, bound, seed=seed)
    return {"applicable": True, "details": details,
            "conclusion": verdict.describe(), "finite": verdict.is_finite}
