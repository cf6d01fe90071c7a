# Corner algebras: cutting an algebra down to a set of vertices.
#
# Obscuring the middle vertex of u --a--> v (loop b) --c--> w leaves paths
# that travel through it; those become the arrows of the corner quiver.

from quiverext import (IdempotentPair, build_engine, corner_algebra,
                       f_lambda_e_module, format_algebra, global_dimension,
                       is_H_exact, parse_algebra)

DESCRIPTION = """
field Q
group Z 1
vertices u v w
arrow a u v 1
arrow b v v 1
arrow c v w 1
truncate 4
rel b*b
"""

engine = build_engine(parse_algebra(DESCRIPTION))
pair = IdempotentPair(engine, ["u", "w"])
corner = corner_algebra(engine, pair)

print("corner dimension:", corner.dim)
print("corner arrows (one per minimal f-path that survives the relations):")
for entry in corner.witness_json():
    print("  %s  <-  path %s, weight %s"
          % (entry["arrow"], "*".join(entry["path"]), entry["weight"]))

# the corner is presented as a quiver algebra in the same file format,
# verified isomorphic to the actual corner via its multiplication table
print()
print(format_algebra(corner.presentation))
print("corner global dimension:",
      global_dimension(corner.corner_engine, 8).describe())

# the e-to-f paths form a module over the corner; here both survivors are
# annihilated by the corner arrows, so the module is semisimple
fle, check = f_lambda_e_module(corner)
print("e-to-f module dims:", {v: d for v, d in fle.dim_vector().items() if d})
print("f-row of the algebra splits as corner + e-to-f:", check["splits"])
flag, witness = is_H_exact(corner)
print("right adjoint exact (e-to-f module projective):", flag)
