"""Bundled catalog: named small groups as JSON descriptions.

Mixes the complemented families (squarefree cyclics, elementary abelians,
odd dihedrals, pq metacyclics and their products) with the standard
obstructions (C4, Q8, D4, A4, S4, the order-27 extraspecial group of
exponent 3, ...).  Descriptions double as the on-disk schema examples.
"""

from __future__ import annotations

from typing import Optional

from .config import Caps
from .descriptions import parse_group
from .groups import FiniteGroup


def _cyclic(n: int) -> dict:
    return {"kind": "cyclic", "n": n}


def _product(*factors: dict) -> dict:
    return {"kind": "product", "factors": list(factors)}


def _semidirect(actor: dict, space: dict, action: list) -> dict:
    return {"kind": "semidirect", "actor": actor, "space": space, "action": action}


def _dihedral(n: int) -> dict:
    ident = list(range(n))
    invert = [(-a) % n for a in range(n)]
    return _semidirect(_cyclic(2), _cyclic(n), [ident, invert])


def _metacyclic(p: int, q: int) -> dict:
    """C_p x| C_q, generator acting as the least multiplier of order q mod p."""
    r = next(c for c in range(2, p)
             if _mult_order(c, p) == q)
    rows, mult = [], 1
    for _ in range(q):
        rows.append([(a * mult) % p for a in range(p)])
        mult = mult * r % p
    return _semidirect(_cyclic(q), _cyclic(p), rows)


def _mult_order(a: int, p: int) -> int:
    k, cur = 1, a % p
    while cur != 1:
        cur = cur * a % p
        k += 1
    return k


def _quaternion8() -> dict:
    # elements 1, -1, i, -i, j, -j, k, -k
    units = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "i"): "-k", ("j", "k"): "i",
            ("k", "j"): "-i", ("k", "i"): "j", ("i", "k"): "-j"}

    def mul(a: str, b: str) -> str:
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        if a == "1":
            out = b
        elif b == "1":
            out = a
        else:
            out = base[(a, b)]
        if out.startswith("-"):
            sign, out = -sign, out[1:]
        return out if sign > 0 else "-" + out

    table = [[units.index(mul(a, b)) for b in units] for a in units]
    return {"kind": "table", "table": table}


def _extraspecial27() -> dict:
    # (C3 x C3) x| C3 acting by the shear (a, b) -> (a, b + k*a); exponent 3
    rows = []
    for k in range(3):
        rows.append([a * 3 + (b + k * a) % 3 for a in range(3) for b in range(3)])
    return _semidirect(_cyclic(3), _product(_cyclic(3), _cyclic(3)), rows)


def _perm(degree: int, generators: list) -> dict:
    return {"kind": "perm", "degree": degree, "generators": generators}


S3_DESC = _perm(3, [[1, 2, 0], [1, 0, 2]])

ENTRIES: tuple[tuple[str, dict], ...] = (
    ("C1", _cyclic(1)),
    ("C2", _cyclic(2)),
    ("C3", _cyclic(3)),
    ("C4", _cyclic(4)),
    ("C5", _cyclic(5)),
    ("C6", _cyclic(6)),
    ("C7", _cyclic(7)),
    ("C8", _cyclic(8)),
    ("C9", _cyclic(9)),
    ("C10", _cyclic(10)),
    ("C12", _cyclic(12)),
    ("C15", _cyclic(15)),
    ("C21", _cyclic(21)),
    ("C24", _cyclic(24)),
    ("C30", _cyclic(30)),
    ("C42", _cyclic(42)),
    ("V4", _product(_cyclic(2), _cyclic(2))),
    ("C2^3", _product(_cyclic(2), _cyclic(2), _cyclic(2))),
    ("C2^4", _product(_cyclic(2), _cyclic(2), _cyclic(2), _cyclic(2))),
    ("C3^2", _product(_cyclic(3), _cyclic(3))),
    ("C3^3", _product(_cyclic(3), _cyclic(3), _cyclic(3))),
    ("C5^2", _product(_cyclic(5), _cyclic(5))),
    ("C2xC4", _product(_cyclic(2), _cyclic(4))),
    ("C3xC9", _product(_cyclic(3), _cyclic(9))),
    ("C6xC6", _product(_cyclic(6), _cyclic(6))),
    ("S3", S3_DESC),
    ("D4", _dihedral(4)),
    ("D5", _dihedral(5)),
    ("D6", _dihedral(6)),
    ("D7", _dihedral(7)),
    ("D9", _dihedral(9)),
    ("D15", _dihedral(15)),
    ("D21", _dihedral(21)),
    ("Q8", _quaternion8()),
    ("A4", _perm(4, [[1, 2, 0, 3], [0, 2, 3, 1]])),
    ("S4", _perm(4, [[1, 2, 3, 0], [1, 0, 2, 3]])),
    ("C7:C3", _metacyclic(7, 3)),
    ("C7:C6", _metacyclic(7, 6)),
    ("F20", _metacyclic(5, 4)),
    ("C3:C4", _semidirect(_cyclic(4), _cyclic(3),
                          [[0, 1, 2], [0, 2, 1], [0, 1, 2], [0, 2, 1]])),
    ("ES27", _extraspecial27()),
    ("S3xC2", _product(S3_DESC, _cyclic(2))),
    ("S3xC3", _product(S3_DESC, _cyclic(3))),
    ("S3xC5", _product(S3_DESC, _cyclic(5))),
    ("S3xC7", _product(S3_DESC, _cyclic(7))),
    ("S3xS3", _product(S3_DESC, S3_DESC)),
    ("Q8xC3", _product(_quaternion8(), _cyclic(3))),
    ("D4xC3", _product(_dihedral(4), _cyclic(3))),
)


def names() -> list[str]:
    return [n for n, _ in ENTRIES]


def description_for(name: str) -> dict:
    for n, desc in ENTRIES:
        if n == name:
            return desc
    raise KeyError(name)


def build(name: str, caps: Optional[Caps] = None) -> FiniteGroup:
    return parse_group(description_for(name), caps, name=name)


def build_all(caps: Optional[Caps] = None) -> list[tuple[str, FiniteGroup]]:
    return [(n, parse_group(d, caps, name=n)) for n, d in ENTRIES]
