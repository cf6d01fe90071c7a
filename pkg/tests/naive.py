"""Independent brute-force oracles, deliberately sharing no code with the
package: plain dicts, full (unblocked) relation matrices, and a local
fraction Gaussian elimination.  Used to freeze expected values."""

from fractions import Fraction


def parse_lines(text):
    """A minimal reading of the algebra format, just enough for the oracle."""
    vertices, arrows, rels, trunc = [], [], [], None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "vertices":
            vertices = toks[1:]
        elif toks[0] == "arrow":
            arrows.append((toks[1], toks[2], toks[3]))
        elif toks[0] == "truncate":
            trunc = int(toks[1])
        elif toks[0] == "rel":
            terms = []
            for chunk in " ".join(toks[1:]).split(" + "):
                factors = chunk.split("*")
                coeff = Fraction(1)
                first = factors[0]
                if first.lstrip("-").replace("/", "").isdigit():
                    coeff = Fraction(first)
                    factors = factors[1:]
                terms.append((coeff, factors))
            rels.append(terms)
    return vertices, arrows, rels, trunc


def enumerate_paths(vertices, arrows, max_len):
    """Paths as (tuple of arrow names in composition order, source, target)."""
    out = {0: [((), v, v) for v in vertices]}
    names = {a[0]: a for a in arrows}
    for length in range(1, max_len + 1):
        cur = []
        for seq, src, tgt in out[length - 1]:
            for name, a_src, a_tgt in arrows:
                if a_src == tgt:
                    cur.append(((name,) + seq, src, a_tgt))
        out[length] = cur
    return out, names


def path_of_word(word, names):
    """(sequence, source, target) of a composition-order arrow word, or None."""
    src = names[word[-1]][1]
    tgt = names[word[-1]][2]
    for name in reversed(word[:-1]):
        if names[name][1] != tgt:
            return None
        tgt = names[name][2]
    return (tuple(word), src, tgt)


def rank_fraction(rows, ncols):
    """Row rank by plain Gaussian elimination over Fraction."""
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def naive_dimension(text):
    """dim KQ/(I + J^N): number of paths of length < N minus the rank of the
    span of all padded relation products, computed in one big matrix."""
    vertices, arrows, rels, trunc = parse_lines(text)
    paths, names = enumerate_paths(vertices, arrows, trunc - 1)
    all_paths = [p for ps in paths.values() for p in ps]
    index = {p: i for i, p in enumerate(all_paths)}
    rows = []
    for terms in rels:
        uniform = {}
        for coeff, word in terms:
            p = path_of_word(word, names)
            assert p is not None, "relation word does not compose"
            uniform.setdefault((p[1], p[2]), []).append((coeff, p))
        for piece in uniform.values():
            r_src = piece[0][1][1]
            r_tgt = piece[0][1][2]
            for left in all_paths:
                if left[1] != r_tgt:
                    continue
                for right in all_paths:
                    if right[2] != r_src:
                        continue
                    row = [Fraction(0)] * len(all_paths)
                    nonzero = False
                    for coeff, (word, _, _) in piece:
                        seq = left[0] + word + right[0]
                        if len(seq) >= trunc:
                            continue
                        full = (seq, right[1], left[2])
                        row[index[full]] += coeff
                        nonzero = True
                    if nonzero and any(row):
                        rows.append(row)
    return len(all_paths) - rank_fraction(rows, len(all_paths))


def naive_path_count_from(text, vertex):
    """Paths (of any length below truncation) with the given source that
    survive the relations: dimension of the projective at the vertex,
    via the same one-big-matrix method restricted to columns."""
    vertices, arrows, rels, trunc = parse_lines(text)
    paths, names = enumerate_paths(vertices, arrows, trunc - 1)
    all_paths = [p for ps in paths.values() for p in ps]
    wanted = [p for p in all_paths if p[1] == vertex]
    index = {p: i for i, p in enumerate(all_paths)}
    rows = []
    for terms in rels:
        uniform = {}
        for coeff, word in terms:
            p = path_of_word(word, names)
            uniform.setdefault((p[1], p[2]), []).append((coeff, p))
        for piece in uniform.values():
            r_src = piece[0][1][1]
            r_tgt = piece[0][1][2]
            for left in all_paths:
                if left[1] != r_tgt:
                    continue
                for right in all_paths:
                    if right[2] != r_src or right[1] != vertex:
                        continue
                    row = [Fraction(0)] * len(all_paths)
                    nonzero = False
                    for coeff, (word, _, _) in piece:
                        seq = left[0] + word + right[0]
                        if len(seq) >= trunc:
                            continue
                        full = (seq, right[1], left[2])
                        row[index[full]] += coeff
                        nonzero = True
                    if nonzero and any(row):
                        rows.append(row)
    return len(wanted) - rank_fraction(rows, len(all_paths))
