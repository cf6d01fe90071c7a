"""Minimal graded projective resolutions, syzygies, and dimension verdicts.

A resolution is built by iterated projective covers, so it is minimal by
construction (kernels land in the radical); exactness and minimality are
still re-checked by `verify`.  Infinite projective dimension is certified
by syzygy periodicity: a graded isomorphism Omega^{n0+t} ~ Omega^{n0}[h].
Verdicts that cannot be settled within the bound stay honest ("at_least").
"""

from .modules import (dual_to_opposite, module_iso_test, projective_cover,
                      shift_rep, simple_module)
from .quiver import wsub, wzero


class DimVerdict:
    """Finite(d), InfiniteCertified(certificate), or AtLeast(bound)."""

    __slots__ = ("kind", "value", "bound", "certificate")

    def __init__(self, kind, value=None, bound=None, certificate=None):
        self.kind = kind
        self.value = value
        self.bound = bound
        self.certificate = certificate

    @staticmethod
    def finite(d):
        return DimVerdict("finite", value=d)

    @staticmethod
    def infinite(cert):
        return DimVerdict("infinite", certificate=cert)

    @staticmethod
    def at_least(bound):
        return DimVerdict("at_least", bound=bound)

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def is_infinite(self):
        return self.kind == "infinite"

    @property
    def is_undetermined(self):
        return self.kind == "at_least"

    def __eq__(self, other):
        if isinstance(other, DimVerdict):
            return (self.kind, self.value, self.bound) == (other.kind, other.value, other.bound)
        return NotImplemented

    def describe(self):
        if self.kind == "finite":
            return "finite(%d)" % self.value
        if self.kind == "infinite":
            c = self.certificate
            return "infinite (periodic certificate: n0=%d, period=%d, shift=%s)" % (
                c.n0, c.period, list(c.shift))
        return "at least %d (undetermined at bound)" % (self.bound + 1)

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "finite":
            out["value"] = self.value
        elif self.kind == "infinite":
            out["certificate"] = {"n0": self.certificate.n0,
                                  "period": self.certificate.period,
                                  "shift": list(self.certificate.shift)}
        else:
            out["bound"] = self.bound
        return out

    def __repr__(self):
        return "DimVerdict(%s)" % self.describe()


def combine_verdicts(verdicts):
    """Max of projective dimensions over a family (empty family: Finite(-1))."""
    best = DimVerdict.finite(-1)
    undetermined = None
    for v in verdicts:
        if v.is_infinite:
            return v
        if v.is_undetermined:
            undetermined = v
        elif best.is_finite and v.value > best.value:
            best = v
    return undetermined if undetermined is not None else best


class PeriodicityCertificate:
    """Witness for Omega^{n0 + period} ~ Omega^{n0}[shift]."""

    __slots__ = ("n0", "period", "shift", "witness")

    def __init__(self, n0, period, shift, witness):
        self.n0 = n0
        self.period = period
        self.shift = shift
        self.witness = witness


class ResolutionStep:
    __slots__ = ("cover",)

    def __init__(self, cover):
        self.cover = cover

    @property
    def projective(self):
        return self.cover.projective

    @property
    def syzygy(self):
        return self.cover.kernel


class MinimalResolution:
    """A minimal graded projective resolution of a representation.

    Step n covers the n-th syzygy; the differential P^n -> P^{n-1} is the
    cover epi followed by the previous kernel's inclusion.
    """

    def __init__(self, engine, module, seed=0):
        self.engine = engine
        self.module = module
        self.seed = seed
        self.steps = []
        self.certificate = None
        self._differentials = {}

    def syzygy(self, n):
        if n == 0:
            return self.module
        return self.steps[n - 1].syzygy

    def term(self, n):
        return self.steps[n].projective

    def summands(self, n):
        return list(self.steps[n].projective.summands)

    def extend_to(self, bound):
        """Compute covers through step `bound` (syzygies through bound + 1)."""
        while len(self.steps) <= bound:
            n = len(self.steps)
            omega = self.syzygy(n)
            cover = projective_cover(self.engine, omega)
            self.steps.append(ResolutionStep(cover))
            if self.certificate is None and not omega.is_zero():
                self._scan_periodicity(n + 1)
        return self

    def _scan_periodicity(self, n):
        new = self.syzygy(n)
        if new.is_zero():
            return
        new_dims = new.dim_vector()
        for m in range(n):
            old = self.syzygy(m)
            if old.is_zero() or old.dim_vector() != new_dims:
                continue
            h = _uniform_shift(old, new)
            if h is None:
                continue
            status, witness = module_iso_test(shift_rep(old, h), new,
                                              seed=self.seed + 7919 * n + m)
            if status == "isomorphic":
                self.certificate = PeriodicityCertificate(m, n - m, h, witness)
                return

    def differential(self, n):
        """The map P^n -> P^{n-1} (n >= 1) or P^0 -> M (n = 0)."""
        if n in self._differentials:
            return self._differentials[n]
        if n == 0:
            d = self.steps[0].cover.epi
        else:
            prev = self.steps[n - 1].cover
            d = prev.kernel_inclusion.compose(self.steps[n].cover.epi)
        self._differentials[n] = d
        return d

    def pd_verdict(self, bound):
        """Projective dimension from the data computed up to `bound` steps."""
        if self.module.is_zero():
            return DimVerdict.finite(-1)
        self.extend_to(bound)
        for n in range(1, bound + 2):
            if self.syzygy(n).is_zero():
                return DimVerdict.finite(n - 1)
        if self.certificate is not None:
            return DimVerdict.infinite(self.certificate)
        return DimVerdict.at_least(bound)

    def verify(self, up_to=None):
        """Re-check exactness, minimality and (if present) the certificate."""
        top = len(self.steps) - 1 if up_to is None else up_to
        for n in range(1, top + 1):
            d_n = self.differential(n)
            d_prev = self.differential(n - 1)
            if not d_prev.compose(d_n).is_zero():
                raise AssertionError("differential composite is nonzero at step %d" % n)
            # exactness: rank d_n = dim ker d_{n-1}
            rank_n = d_n.rank()
            rank_prev = d_prev.rank()
            dim_prev = self.term(n - 1).total_dim
            if rank_n != dim_prev - rank_prev:
                raise AssertionError("resolution is not exact at step %d" % (n - 1))
            # minimality: generator images avoid generator slots downstairs
            proj = self.term(n)
            prev = self.term(n - 1)
            for idx in range(len(proj.summands)):
                v, vec = proj.generator_vector(idx)
                img = d_n.blocks[v].apply(vec)
                for gi, _ in prev.generator_coordinates(v).items():
                    if img[gi]:
                        raise AssertionError(
                            "differential at step %d has a unit entry" % n)
        if self.certificate is not None:
            c = self.certificate
            if not c.witness.is_iso():
                raise AssertionError("periodicity witness is not invertible")
            c.witness._verify()
        return True

    def to_json(self):
        out = {"module_dims": {v: d for v, d in self.module.dim_vector().items() if d},
               "steps": []}
        for n, step in enumerate(self.steps):
            out["steps"].append({
                "n": n,
                "summands": step.projective.to_json(),
                "differential": self.differential(n).to_json(),
            })
        if self.certificate is not None:
            c = self.certificate
            out["certificate"] = {"n0": c.n0, "period": c.period, "shift": list(c.shift)}
        return out


def _uniform_shift(old, new):
    """The h with degrees(new) = degrees(old) + h at every vertex, or None."""
    h = None
    for v in old.engine.quiver.vertices:
        a = sorted(old.degrees[v])
        b = sorted(new.degrees[v])
        if len(a) != len(b):
            return None
        if not a:
            continue
        cand = wsub(b[0], a[0])
        if h is None:
            h = cand
        elif cand != h:
            return None
        if any(wsub(y, x) != h for x, y in zip(a, b)):
            return None
    if h is None:
        h = wzero(old.engine.group_rank)
    return h


def minimal_resolution(engine, module, bound, seed=0):
    res = MinimalResolution(engine, module, seed=seed)
    res.extend_to(bound)
    return res


def projective_dimension(engine, module, bound, seed=0):
    return MinimalResolution(engine, module, seed=seed).pd_verdict(bound)


def injective_dimension(engine, module, bound, seed=0):
    """Injective dimension, as projective dimension of the dual over the
    opposite algebra."""
    dual = dual_to_opposite(engine, module)
    return projective_dimension(engine.opposite_engine, dual, bound, seed=seed)


def global_dimension(engine, bound, seed=0):
    """Max projective dimension over the graded simples (one per vertex)."""
    verdicts = [projective_dimension(engine, simple_module(engine, v), bound, seed=seed)
                for v in engine.quiver.vertices]
    return combine_verdicts(verdicts)


def belongs_to(summands, vertex_set):
    """True when every (vertex, shift) summand lies over the vertex set."""
    vs = set(vertex_set)
    return all(v in vs for v, _ in summands)
