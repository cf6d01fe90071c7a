"""Bigraded Ext tables, Yoneda products via chain-map lifting, an
independent non-minimal oracle, finite-generation window checks, and a
heuristic GK-dimension estimator.

Ext^n(S_u, S_v[g]) is read off a minimal resolution of S_u as the
multiplicity of the summand (v, g) in P^n: maps to a simple kill the
radical, and minimality makes every such map a cocycle and no nonzero one
a coboundary.  The oracle recomputes the same dimensions from a
deliberately non-minimal resolution by honest Hom-complex cohomology.
"""

import math

from .linalg import Matrix, Subspace
from .modules import (Projective, hom_space, kernel_subrep,
                      projective_cover, simple_module)
from .quiver import wadd, wzero
from .resolution import MinimalResolution


class ExtClass:
    """A cocycle on the minimal resolution of a source simple.

    Represented by its values on the generator slots of P^n that match the
    target (vertex, degree): coeffs maps summand index -> scalar.
    """

    __slots__ = ("degree", "source", "target_vertex", "target_degree", "coeffs")

    def __init__(self, degree, source, target_vertex, target_degree, coeffs):
        self.degree = degree
        self.source = source
        self.target_vertex = target_vertex
        self.target_degree = tuple(target_degree)
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def is_zero(self):
        return not self.coeffs

    def key(self):
        return (self.degree, self.source, self.target_vertex, self.target_degree)

    def __eq__(self, other):
        return (isinstance(other, ExtClass) and self.key() == other.key()
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return "ExtClass(n=%d, %s -> %s[%s], %s)" % (
            self.degree, self.source, self.target_vertex,
            list(self.target_degree), self.coeffs)


class ExtTable:
    """Bigraded Ext dimensions between graded simples, up to a bound."""

    def __init__(self, engine, bound, seed=0):
        self.engine = engine
        self.bound = bound
        self.seed = seed
        self.resolutions = {}
        for v in engine.quiver.vertices:
            res = MinimalResolution(engine, simple_module(engine, v), seed=seed)
            res.extend_to(bound)
            self.resolutions[v] = res
        self.entries = {}
        for u, res in self.resolutions.items():
            for n in range(bound + 1):
                for (v, g) in res.summands(n):
                    key = (n, u, v, g)
                    self.entries[key] = self.entries.get(key, 0) + 1
        self.undetermined = {
            u for u, res in self.resolutions.items()
            if res.certificate is None
            and all(not res.syzygy(n).is_zero() for n in range(bound + 2))}

    def entry(self, n, u, v, g):
        return self.entries.get((n, u, v, tuple(g)), 0)

    def entry_total(self, n, u, v):
        """Ungraded Ext dimension: summed over the group degrees."""
        return sum(d for (m, a, b, _), d in self.entries.items()
                   if m == n and a == u and b == v)

    def dims_at(self, n):
        return {(u, v, g): d for (m, u, v, g), d in self.entries.items() if m == n}

    def total_dim_at(self, n):
        return sum(d for (m, _, _, _), d in self.entries.items() if m == n)

    def basis_classes(self, n, source=None):
        """The standard basis of Ext^n: one class per matching summand."""
        out = []
        sources = [source] if source is not None else list(self.engine.quiver.vertices)
        for u in sources:
            res = self.resolutions[u]
            if n > self.bound:
                raise ValueError("degree %d beyond computed bound %d" % (n, self.bound))
            for idx, (v, g) in enumerate(res.summands(n)):
                out.append(ExtClass(n, u, v, g, {idx: self.engine.field.one}))
        return out

    def identity_class(self, u):
        return ExtClass(0, u, u, wzero(self.engine.group_rank),
                        {0: self.engine.field.one})

    def restricted(self, vertices):
        """Entries among simples over the given vertex set only."""
        vs = set(vertices)
        return {k: d for k, d in self.entries.items() if k[1] in vs and k[2] in vs}

    def to_rows(self):
        rows = []
        for (n, u, v, g), d in sorted(self.entries.items()):
            rows.append({"n": n, "source": u, "target": v, "g": list(g), "dim": d})
        return rows


def ext_table(engine, bound, seed=0):
    return ExtTable(engine, bound, seed=seed)


def _solve_generator_lift(proj, target_proj, lhs_map, rhs_vectors, grade):
    """Find a module map phi: proj.rep -> target_proj.rep (degree drop `grade`)
    with lhs_map o phi prescribed on generators.

    rhs_vectors[idx] is the required value of (lhs_map o phi) on generator
    idx, living at the generator's vertex.  Unknowns are the generator
    images, solved per generator on the matching degree slice with the
    first-solution pivot rule.
    """
    engine = proj.engine
    field = engine.field
    images = []
    for idx, (gv, gdeg) in enumerate(proj.summands):
        v, _ = proj.gen_pos[idx]
        gen_degree = proj.rep.degrees[v][proj.gen_pos[idx][1]]
        want = rhs_vectors[idx]
        slice_idx = target_proj.rep.degree_slice(v, tuple(
            a - b for a, b in zip(gen_degree, grade)))
        block = lhs_map.blocks[v]
        sub = Matrix.from_columns(field, [block.col(j) for j in slice_idx], block.nrows)
        sol = sub.solve(want)
        if sol is None:
            raise AssertionError("lifting system is inconsistent")
        full = [field.zero] * target_proj.rep.dim(v)
        for j, val in zip(slice_idx, sol):
            full[j] = val
        images.append((v, full))
    return proj.map_from_generator_images(target_proj.rep, images, grade=grade)


def lift_cocycle(table, y, depth):
    """Chain maps phi_k: P^{n+k}(S_a) -> P^k(S_b), k = 0..depth, lifting the
    cocycle y in Ext^n(S_a, S_b[g]).  Maps carry the uniform degree drop g.
    """
    engine = table.engine
    field = engine.field
    res_a = table.resolutions[y.source]
    res_b = table.resolutions[y.target_vertex]
    n = y.degree
    g = y.target_degree
    res_a.extend_to(n + depth)
    res_b.extend_to(depth)
    lifts = []
    # phi_0: send generator idx of P^n(S_a) to coeff * (matching generator
    # of P^0(S_b)); P^0 of a simple is the single indecomposable cover.
    p_n = res_a.term(n)
    p0 = res_b.term(0)
    images = []
    for idx in range(len(p_n.summands)):
        c = y.coeffs.get(idx, field.zero)
        gv, vec0 = p0.generator_vector(0)
        vec = [c * x for x in vec0]
        v, _ = p_n.gen_pos[idx]
        if v != gv and any(vec):
            raise AssertionError("cocycle targets a different vertex")
        if not any(vec):
            vec = [field.zero] * p0.rep.dim(v)
        images.append((v, vec))
    lifts.append(p_n.map_from_generator_images(p0.rep, images, grade=g))
    for k in range(1, depth + 1):
        p_src = res_a.term(n + k)
        p_tgt = res_b.term(k)
        d_src = res_a.differential(n + k)
        d_tgt = res_b.differential(k)
        prev = lifts[-1]
        rhs = []
        for idx in range(len(p_src.summands)):
            v, vec = p_src.generator_vector(idx)
            down = d_src.blocks[v].apply(vec)
            rhs.append(prev.blocks[v].apply(down))
        lifts.append(_solve_generator_lift(p_src, p_tgt, d_tgt, rhs, g))
    return lifts


def yoneda_product(table, x, y):
    """The Yoneda product x*y: lift y through the resolution of its target
    simple, then apply x on top.  Non-composable classes multiply to zero.
    """
    engine = table.engine
    field = engine.field
    degree = x.degree + y.degree
    tdeg = wadd(x.target_degree, y.target_degree)
    if x.source != y.target_vertex or x.is_zero() or y.is_zero():
        return ExtClass(degree, y.source, x.target_vertex, tdeg, {})
    lifts = lift_cocycle(table, y, x.degree)
    phi = lifts[x.degree]
    res_a = table.resolutions[y.source]
    res_b = table.resolutions[x.source]
    p_top = res_a.term(degree)
    p_mid = res_b.term(x.degree)
    coeffs = {}
    for idx in range(len(p_top.summands)):
        v, vec = p_top.generator_vector(idx)
        mid = phi.blocks[v].apply(vec)
        acc = field.zero
        for gi, j in p_mid.generator_coordinates(v).items():
            c = x.coeffs.get(j)
            if c and mid[gi]:
                acc = acc + c * mid[gi]
        if acc:
            coeffs[idx] = acc
    return ExtClass(degree, y.source, x.target_vertex, tdeg, coeffs)


# -- independent oracle ----------------------------------------------------

class _OracleResolution:
    """A deliberately non-minimal projective resolution of a simple: each
    cover carries one redundant copy of the projective at a fixed vertex,
    mapped to zero."""

    def __init__(self, engine, source_vertex, padding_vertex=None):
        self.engine = engine
        self.padding = padding_vertex or engine.quiver.vertices[0]
        self.module = simple_module(engine, source_vertex)
        self.terms = []
        self.maps = []   # maps[k]: terms[k].rep -> terms[k-1].rep (k >= 1)
        self.kernels = []
        self._start()

    def _pad(self, cover_projective, target, epi_images):
        """Cover plus one redundant summand mapped to zero."""
        summands = list(cover_projective.summands) + \
            [(self.padding, wzero(self.engine.group_rank))]
        proj = Projective(self.engine, summands)
        field = self.engine.field
        images = list(epi_images)
        images.append((self.padding, [field.zero] * target.dim(self.padding)))
        epi = proj.map_from_generator_images(target, images)
        return proj, epi

    def _start(self):
        cov = projective_cover(self.engine, self.module)
        lift_images = []
        for idx in range(len(cov.projective.summands)):
            v, vec = cov.projective.generator_vector(idx)
            lift_images.append((v, cov.epi.blocks[v].apply(vec)))
        proj, epi = self._pad(cov.projective, self.module, lift_images)
        self.terms.append(proj)
        self.maps.append(epi)
        k, incl = kernel_subrep(epi)
        self.kernels.append((k, incl))

    def extend_to(self, bound):
        while len(self.terms) <= bound:
            k, incl = self.kernels[-1]
            cov = projective_cover(self.engine, k)
            lift_images = []
            for idx in range(len(cov.projective.summands)):
                v, vec = cov.projective.generator_vector(idx)
                lift_images.append((v, cov.epi.blocks[v].apply(vec)))
            proj, epi_to_k = self._pad(cov.projective, k, lift_images)
            d = incl.compose(epi_to_k)
            self.terms.append(proj)
            self.maps.append(d)
            k2, incl2 = kernel_subrep(epi_to_k)
            self.kernels.append((k2, incl2))


def ext_oracle(engine, source_vertex, target_vertex, n, padding_vertex=None):
    """dim Ext^n(S_source, S_target), ungraded, via Hom-complex cohomology
    over a non-minimal resolution.  Independent of the table computation.
    """
    res = _OracleResolution(engine, source_vertex, padding_vertex)
    res.extend_to(n + 1)
    target = simple_module(engine, target_vertex)

    def flat(mmap):
        vec = []
        for v in engine.quiver.vertices:
            for row in mmap.blocks[v].rows:
                vec.extend(row)
        return vec

    hom_bases = []
    for k in (n - 1, n, n + 1):
        if k < 0:
            hom_bases.append(None)
        else:
            hom_bases.append(hom_space(res.terms[k].rep, target, graded=False))

    def dstar_rank(basis_k, k):
        """Rank of Hom(Q^k, T) -> Hom(Q^{k+1}, T), psi -> psi o d_{k+1}."""
        if basis_k is None or not basis_k:
            return 0
        d = res.maps[k + 1]
        cols = [flat(psi.compose(d)) for psi in basis_k]
        if not cols or not cols[0]:
            return 0
        return Matrix.from_columns(engine.field, cols, len(cols[0])).rank()

    dim_hom_n = len(hom_bases[1])
    rank_out = dstar_rank(hom_bases[1], n)
    rank_in = dstar_rank(hom_bases[0], n - 1) if n >= 1 else 0
    return dim_hom_n - rank_out - rank_in


# -- finite generation and growth ------------------------------------------

class GenerationReport:
    __slots__ = ("gen_bound", "check_bound", "success", "first_failure", "details")

    def __init__(self, gen_bound, check_bound, success, first_failure, details):
        self.gen_bound = gen_bound
        self.check_bound = check_bound
        self.success = success
        self.first_failure = first_failure
        self.details = details

    def to_json(self):
        return {"gen_bound": self.gen_bound, "check_bound": self.check_bound,
                "success": self.success, "first_failure": self.first_failure,
                "degrees": self.details}


def generation_window_check(table, gen_bound, check_bound):
    """Is Ext^j, for gen_bound < j <= check_bound, spanned by Yoneda products
    of classes of degree <= gen_bound?  Reports the first failing degree."""
    if not gen_bound < check_bound <= table.bound:
        raise ValueError("need gen_bound < check_bound <= table bound")
    field = table.engine.field

    def coords(cls, layout):
        vec = [field.zero] * layout["size"]
        off = layout["offset"][cls.source]
        for idx, c in cls.coeffs.items():
            vec[off + idx] = c
        return vec

    def layout_at(j):
        offset = {}
        size = 0
        for u in table.engine.quiver.vertices:
            offset[u] = size
            size += len(table.resolutions[u].summands(j))
        return {"offset": offset, "size": size}

    # span_basis[j]: list of ExtClass spanning the reachable part of Ext^j
    span_basis = {}
    for j in range(0, gen_bound + 1):
        span_basis[j] = table.basis_classes(j)
    generators = [c for j in range(1, gen_bound + 1) for c in table.basis_classes(j)]
    details = {}
    first_failure = None
    for j in range(gen_bound + 1, check_bound + 1):
        layout = layout_at(j)
        span = Subspace(field, layout["size"]) if layout["size"] else None
        produced = []
        for x in generators:
            lower = span_basis.get(j - x.degree, [])
            for y in lower:
                if x.source != y.target_vertex:
                    continue
                z = yoneda_product(table, x, y)
                if not z.is_zero():
                    if span.add(coords(z, layout)):
                        produced.append(z)
        full = table.total_dim_at(j)
        got = span.dim if span else 0
        details[j] = {"dim": full, "generated": got}
        span_basis[j] = produced
        if got != full and first_failure is None:
            first_failure = j
    return GenerationReport(gen_bound, check_bound, first_failure is None,
                            first_failure, details)


def gk_estimate_from_dims(dims_by_degree, lo, hi):
    """Least-squares slope of log(cumulative dim through n) against log n
    for n in [lo, hi].  Returns (slope, rms_residual).  Heuristic only.
    """
    if hi - lo + 1 < 3:
        raise ValueError("degenerate range: need at least 3 points")
    if hi >= len(dims_by_degree):
        raise ValueError("range exceeds computed degrees")
    cum = []
    total = 0
    for d in dims_by_degree:
        total += d
        cum.append(total)
    xs, ys = [], []
    for n in range(lo, hi + 1):
        if cum[n] <= 0:
            continue
        xs.append(math.log(n))
        ys.append(math.log(cum[n]))
    if len(xs) < 3:
        raise ValueError("degenerate range after dropping empty degrees")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx if sxx else 0.0
    intercept = my - slope * mx
    resid = math.sqrt(sum((y - (intercept + slope * x)) ** 2
                          for x, y in zip(xs, ys)) / len(xs))
    return slope, resid


def gk_estimate(table, lo, hi):
    dims = [table.total_dim_at(n) for n in range(hi + 1)]
    return gk_estimate_from_dims(dims, lo, hi)
