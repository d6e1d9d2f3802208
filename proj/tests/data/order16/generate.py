#!/usr/bin/env python3
"""Writes the 14 groups of order 16 as left-regular permutation representations."""
import json
import pathlib

HERE = pathlib.Path(__file__).parent


def abelian(*mods):
    """Z_m1 x ... x Z_mk with its unit generators."""
    def mul(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, mods))
    gens = []
    for i in range(len(mods)):
        gens.append(tuple(1 if j == i else 0 for j in range(len(mods))))
    return mul, gens, tuple(0 for _ in mods)


def semidirect(n_mul, n_gens, n_id, act, t_order):
    """N x| Z_t where the generator of Z_t acts on N by `act`."""
    def power(t, x):
        for _ in range(t):
            x = act(x)
        return x

    def mul(x, y):
        return (n_mul(x[0], power(x[1], y[0])), (x[1] + y[1]) % t_order)
    gens = [(g, 0) for g in n_gens] + [(n_id, 1)]
    return mul, gens, (n_id, 0)


def direct(a, b):
    am, ag, ai = a
    bm, bg, bi = b

    def mul(x, y):
        return (am(x[0], y[0]), bm(x[1], y[1]))
    return mul, [(g, bi) for g in ag] + [(ai, g) for g in bg], (ai, bi)


def unit_semidirect(n, k, t):
    """Z_n x| Z_t with the generator acting by multiplication by k."""
    m, g, i = abelian(n)
    return semidirect(m, g, i, lambda x: ((x[0] * k) % n,), t)


def dicyclic(n):
    """<a, x | a^(2n), x^2 = a^n, x a x^-1 = a^-1>, elements a^i x^j."""
    def mul(u, v):
        i, j = u
        k, l = v
        if j == 0:
            return ((i + k) % (2 * n), l)
        if l == 0:
            return ((i - k) % (2 * n), 1)
        return ((i - k + n) % (2 * n), 0)
    return mul, [(1, 0), (0, 1)], (0, 0)


def pauli():
    """Matrices i^k X^a Z^b stored as (k, a, b); Z X = -X Z."""
    def mul(u, v):
        k1, a1, b1 = u
        k2, a2, b2 = v
        sign = 2 if (b1 and a2) else 0
        return ((k1 + k2 + sign) % 4, a1 ^ a2, b1 ^ b2)
    return mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], (0, 0, 0)


def regular(group):
    mul, gens, ident = group
    elems = [ident]
    seen = {ident}
    q = 0
    while q < len(elems):
        for g in gens:
            y = mul(g, elems[q])
            if y not in seen:
                seen.add(y)
                elems.append(y)
        q += 1
    index = {e: i for i, e in enumerate(elems)}
    perms = [[index[mul(g, e)] for e in elems] for g in gens]
    return len(elems), perms


def c4xc2_by_c2():
    m, g, i = abelian(4, 2)
    # a -> a b, b -> b
    return semidirect(m, g, i, lambda x: (x[0], (x[1] + x[0]) % 2), 2)


GROUPS = {
    "c16": abelian(16),
    "c4xc4": abelian(4, 4),
    "c4xc2_by_c2": c4xc2_by_c2(),
    "c4_by_c4": unit_semidirect(4, 3, 4),
    "c8xc2": abelian(8, 2),
    "mm16": unit_semidirect(8, 5, 2),
    "d16": unit_semidirect(8, 7, 2),
    "sd16": unit_semidirect(8, 3, 2),
    "q16": dicyclic(4),
    "c4xc2xc2": abelian(4, 2, 2),
    "c2xd8": direct(abelian(2), unit_semidirect(4, 3, 2)),
    "c2xq8": direct(abelian(2), dicyclic(2)),
    "pauli": pauli(),
    "c2x4": abelian(2, 2, 2, 2),
}


def main():
    for name, group in GROUPS.items():
        order, perms = regular(group)
        assert order == 16, (name, order)
        path = HERE / f"{name}.json"
        path.write_text(json.dumps({"degree": order, "generators": perms}) + "\n")


if __name__ == "__main__":
    main()
