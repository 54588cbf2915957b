"""Packed-exponent kernel for the fraction-free determinant.

Exponent tuples are packed into single integers: the top bit field holds
the total degree and the remaining fields hold the per-variable degrees
in context order.  Integer comparison of packed keys is then exactly the
graded-lexicographic term order, monomial multiplication is integer
addition, and divisibility is a guard-bit test, which removes all
per-coordinate tuple loops from the elimination hot path.

Field widths are sized from a determinant degree bound (sum over rows of
the per-row maximum degree), so no intermediate product can overflow its
field; one spare guard bit per field makes the borrow test sound.
"""

from __future__ import annotations

from fractions import Fraction


class Packer:
    __slots__ = ("arity", "shifts", "guard_mask")

    def __init__(self, var_bounds):
        # fields, most significant first: total degree, then each variable
        fields = [sum(var_bounds) + 1] + [b + 1 for b in var_bounds]
        widths = [max(f, 2).bit_length() + 1 for f in fields]
        shifts = []
        pos = 0
        for w in reversed(widths):
            shifts.append(pos)
            pos += w
        shifts.reverse()  # shifts[0] = total-degree field (most significant)
        self.arity = len(var_bounds)
        self.shifts = shifts
        guard = 0
        for s, w in zip(shifts, widths):
            guard |= 1 << (s + w - 1)
        self.guard_mask = guard

    def pack(self, exp) -> int:
        key = sum(exp) << self.shifts[0]
        for e, s in zip(exp, self.shifts[1:]):
            key |= e << s
        return key

    def unpack(self, key: int) -> tuple:
        out = []
        shifts = self.shifts  # arity + 1 entries; index 0 is the total field
        for i in range(1, len(shifts)):
            hi, lo = shifts[i - 1], shifts[i]
            out.append((key >> lo) & ((1 << (hi - lo)) - 1))
        return tuple(out)

    def divisible(self, num_key: int, den_key: int) -> bool:
        return ((num_key | self.guard_mask) - den_key) & self.guard_mask \
            == self.guard_mask


def p_mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            acc = get(k)
            prod = ca * cb
            acc = prod if acc is None else acc + prod
            if acc:
                out[k] = acc
            elif k in out:
                del out[k]
    return out


def p_sub_mul(amul1: dict, amul2: dict, bmul1: dict, bmul2: dict) -> dict:
    """amul1*amul2 - bmul1*bmul2 computed with a single accumulator."""
    out = p_mul(amul1, amul2)
    if not bmul1 or not bmul2:
        return out
    a, b = (bmul1, bmul2) if len(bmul1) <= len(bmul2) else (bmul2, bmul1)
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            acc = get(k)
            prod = ca * cb
            acc = -prod if acc is None else acc - prod
            if acc:
                out[k] = acc
            elif k in out:
                del out[k]
    return out


def _coef_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    q = Fraction(a) / Fraction(b)
    return int(q) if q.denominator == 1 else q


def p_divexact(num: dict, den: dict, packer: Packer) -> dict:
    """Exact division; raises ArithmeticError when a remainder survives."""
    if not den:
        raise ZeroDivisionError("packed division by zero")
    if not num:
        return {}
    if len(den) == 1:
        (dk, dc), = den.items()
        if dk == 0:
            if dc == 1:
                return dict(num)
            return {k: _coef_div(c, dc) for k, c in num.items()}
        out = {}
        for k, c in num.items():
            if not packer.divisible(k, dk):
                raise ArithmeticError("packed division is not exact")
            out[k - dk] = _coef_div(c, dc)
        return out
    lead = max(den)
    lead_c = den[lead]
    den_items = list(den.items())
    rem = dict(num)
    quo: dict = {}
    while rem:
        rk = max(rem)
        if not packer.divisible(rk, lead):
            raise ArithmeticError("packed division is not exact")
        qk = rk - lead
        qc = _coef_div(rem[rk], lead_c)
        quo[qk] = qc
        for dk, dc in den_items:
            k = qk + dk
            acc = rem.get(k, 0) - qc * dc
            if acc:
                rem[k] = acc
            elif k in rem:
                del rem[k]
    return quo


def det_packed(matrix: list, packer: Packer) -> dict:
    """Bareiss fraction-free determinant over packed polynomial entries."""
    n = len(matrix)
    a = [row[:] for row in matrix]
    sign = 1
    prev: dict = {0: 1}
    prev_is_one = True
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if a[i][k]:
                size = len(a[i][k])
                if piv is None or size < piv[0]:
                    piv = (size, i)
        if piv is None:
            return {}
        _, i = piv
        if i != k:
            a[k], a[i] = a[i], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                num = p_sub_mul(pivot, row_i[j], aik, row_k[j])
                row_i[j] = num if prev_is_one else p_divexact(num, prev, packer)
            row_i[k] = {}
        prev = pivot
        prev_is_one = len(prev) == 1 and prev.get(0) == 1
    out = a[n - 1][n - 1]
    if sign < 0:
        out = {k: -c for k, c in out.items()}
    return out
