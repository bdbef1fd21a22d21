"""Write the group-table fixtures used by the tests.

Each group is the closure of a few generators (permutations in one-line
notation; Q8 from the quaternion unit rules); elements are sorted with the
identity first.

    python scripts/make_group_tables.py tests/fixtures/groups
"""

import sys
from pathlib import Path


def closure(gens, mul, identity):
    elems = {identity}
    todo = [identity]
    while todo:
        g = todo.pop()
        for h in gens:
            x = mul(g, h)
            if x not in elems:
                elems.add(x)
                todo.append(x)
    elems = sorted(elems - {identity})
    return [identity] + elems


def table(elems, mul):
    pos = {e: i for i, e in enumerate(elems)}
    return [[pos[mul(a, b)] for b in elems] for a in elems]


def perm_mul(a, b):
    # (a*b)(x) = a(b(x)): apply b first
    return tuple(a[v] for v in b)


def perm_group(n, gens):
    ident = tuple(range(n))
    elems = closure([tuple(g) for g in gens], perm_mul, ident)
    return table(elems, perm_mul)


def write(path, label, tab):
    lines = [f"# label {label}", str(len(tab))] + [" ".join(map(str, r)) for r in tab]
    Path(path).write_text("\n".join(lines) + "\n")


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    write(out / "s3.txt", "S3", perm_group(3, [(1, 0, 2), (1, 2, 0)]))
    write(out / "d4.txt", "D4", perm_group(4, [(1, 2, 3, 0), (0, 3, 2, 1)]))
    write(out / "z2xz2.txt", "Z2xZ2", perm_group(4, [(1, 0, 2, 3), (0, 1, 3, 2)]))
    write(out / "z8.txt", "Z8", perm_group(8, [(1, 2, 3, 4, 5, 6, 7, 0)]))
    write(out / "q8.txt", "Q8", q8_table())
    write(out / "a5.txt", "A5", perm_group(5, [(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)]))


def q8_table():
    # elements are (sign, unit) with unit in 1, i, j, k
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        s, u = rules[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    ident = (1, "1")
    elems = [ident] + sorted({(s, u) for s in (1, -1) for u in "1ijk"} - {ident})
    return table(elems, mul)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/groups")
