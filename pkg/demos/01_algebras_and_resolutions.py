# Building a quiver algebra, computing its basis, and resolving simples.
#
# The algebra here is the running two-vertex example: an arrow a: u -> v
# into a square-zero loop b at v, i.e. KQ / (b^2, ba).

from quiverext import (build_engine, minimal_resolution, parse_algebra,
                       projective_dimension, simple_module)

DESCRIPTION = """
field Q
group Z 1
vertices u v
arrow a u v 1
arrow b v v 1
truncate 3
rel b*b
rel b*a
"""

engine = build_engine(parse_algebra(DESCRIPTION))
print("dimension:", engine.dim)
print("monomial basis:", [repr(p) for p in engine.basis])

# multiplication uses composition order: b*a means "first a, then b"
ba = engine.arrow_element("b") * engine.arrow_element("a")
print("b*a reduces to:", ba, "(the relation kills it)")

# resolve the simple at v; its syzygies repeat with a degree shift, which
# certifies infinite projective dimension
s_v = simple_module(engine, "v")
res = minimal_resolution(engine, s_v, bound=8)
for n in range(5):
    print("P^%d summands:" % n, res.summands(n))
cert = res.certificate
print("periodicity: syzygy %d repeats every %d step(s), shifted by %s"
      % (cert.n0, cert.period, list(cert.shift)))
print("pd(S_v):", projective_dimension(engine, s_v, 8).describe())

# the simple at u has a finite resolution over the one-arrow subquiver
A2 = """
field Q
group Z 1
vertices u v
arrow a u v 1
truncate 2
"""
a2 = build_engine(parse_algebra(A2))
res_u = minimal_resolution(a2, simple_module(a2, "u"), bound=4)
print("over the one-arrow quiver, pd(S_u):",
      res_u.pd_verdict(4).describe())
