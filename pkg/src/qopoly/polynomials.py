"""Sparse multivariate polynomials with exact coefficients.

Terms are kept in a dict mapping integer exponent tuples to nonzero
coefficients (int, Fraction, or any exact ring element supporting +,-,*).
Integer coefficients are stored as plain ints so that the common
integer-only computations never pay Fraction normalization costs.

The module also provides the Sylvester resultant in Y via fraction-free
(Bareiss) elimination, the discriminant of f(Y)-V, monomial substitution
X_i -> T^{c_i}, and the monomial-times-unit structure test used to decide
quasi-ordinariness.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ._packed import Packer, det_packed
from .exponents import pareto_minimal, rat


class ContextMismatch(ValueError):
    """Operands live over different variable contexts."""


class VarContext:
    """An ordered list of variable names.

    The X variables are the names other than V and Y.  When present, Y is
    last and V immediately precedes the tail position, so exponent tuples
    of discriminants end with the V coordinate and exponent tuples of
    input polynomials end with the Y coordinate.
    """

    __slots__ = ("names", "_pos", "d")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        if "Y" in names and names[-1] != "Y":
            raise ValueError("Y must be the last variable")
        if "V" in names and "Y" in names and names.index("V") != len(names) - 2:
            raise ValueError("V must immediately precede Y")
        if "V" in names and "Y" not in names and names[-1] != "V":
            raise ValueError("V must be the last variable when Y is absent")
        self.names = names
        self._pos = {n: i for i, n in enumerate(names)}
        self.d = len(names) - ("V" in self._pos) - ("Y" in self._pos)

    @classmethod
    def make(cls, d: int, *, v: bool = False, y: bool = False,
             x_names: Optional[Sequence[str]] = None) -> "VarContext":
        xs = tuple(x_names) if x_names is not None else tuple(
            f"X{i}" for i in range(1, d + 1))
        names = xs + (("V",) if v else ()) + (("Y",) if y else ())
        return cls(names)

    @property
    def arity(self) -> int:
        return len(self.names)

    @property
    def has_v(self) -> bool:
        return "V" in self._pos

    @property
    def has_y(self) -> bool:
        return "Y" in self._pos

    def position(self, name: str) -> int:
        return self._pos[name]

    def x_names(self) -> tuple:
        return tuple(n for n in self.names if n not in ("V", "Y"))

    def without(self, name: str) -> "VarContext":
        return VarContext(tuple(n for n in self.names if n != name))

    def with_v(self) -> "VarContext":
        if self.has_v:
            return self
        names = list(self.names)
        names.insert(len(names) - (1 if self.has_y else 0), "V")
        return VarContext(names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarContext({', '.join(self.names)})"


def _term_key(exp):
    # graded lexicographic: total degree first, then the exponent tuple
    return (sum(exp), exp)


class MPoly:
    """Sparse exact polynomial over a VarContext."""

    __slots__ = ("context", "terms")

    def __init__(self, context: VarContext, terms: dict):
        # internal: terms must already be normalized (no zeros, right arity)
        self.context = context
        self.terms = terms

    # -- construction -------------------------------------------------

    @classmethod
    def from_terms(cls, context: VarContext, items: Iterable) -> "MPoly":
        terms: dict = {}
        arity = context.arity
        for exp, coef in items:
            exp = tuple(exp)
            if len(exp) != arity:
                raise ValueError(f"exponent arity {len(exp)} != {arity}")
            if any((not isinstance(e, int)) or e < 0 for e in exp):
                raise ValueError(f"exponents must be nonnegative integers: {exp}")
            acc = terms.get(exp)
            acc = coef if acc is None else acc + coef
            if acc:
                terms[exp] = acc
            elif exp in terms:
                del terms[exp]
        return cls(context, {e: _norm_coef(c) for e, c in terms.items() if c})

    @classmethod
    def zero(cls, context: VarContext) -> "MPoly":
        return cls(context, {})

    @classmethod
    def constant(cls, context: VarContext, value) -> "MPoly":
        value = _norm_coef(value)
        if not value:
            return cls.zero(context)
        return cls(context, {(0,) * context.arity: value})

    @classmethod
    def variable(cls, context: VarContext, name: str) -> "MPoly":
        exp = [0] * context.arity
        exp[context.position(name)] = 1
        return cls(context, {tuple(exp): 1})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.context.arity, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.context.position(name)
        return max((e[i] for e in self.terms), default=0)

    def coefficient_of(self, name: str, power: int) -> "MPoly":
        """Coefficient of name**power, as a polynomial without that variable."""
        i = self.context.position(name)
        sub = self.context.without(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == power:
                terms[e[:i] + e[i + 1:]] = c
        return MPoly(sub, terms)

    def sorted_terms(self) -> list:
        """Terms sorted by descending graded-lex order; canonical."""
        return sorted(self.terms.items(), key=lambda t: _term_key(t[0]),
                      reverse=True)

    # -- ring operations ----------------------------------------------

    def _check(self, other: "MPoly"):
        if self.context != other.context:
            raise ContextMismatch(
                f"{self.context!r} vs {other.context!r}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            acc = c if acc is None else acc + c
            if acc:
                terms[e] = acc
            elif e in terms:
                del terms[e]
        return MPoly(self.context, terms)

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            acc = -c if acc is None else acc - c
            if acc:
                terms[e] = acc
            elif e in terms:
                del terms[e]
        return MPoly(self.context, terms)

    def __neg__(self) -> "MPoly":
        return MPoly(self.context, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms: dict = {}
        get = terms.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(sum, zip(ea, eb)))
                acc = get(e)
                prod = ca * cb
                acc = prod if acc is None else acc + prod
                if acc:
                    terms[e] = acc
                elif e in terms:
                    del terms[e]
        return MPoly(self.context, terms)

    def scaled(self, factor) -> "MPoly":
        factor = _norm_coef(factor)
        if not factor:
            return MPoly.zero(self.context)
        return MPoly(self.context,
                     {e: _norm_coef(c * factor) for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.context, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, MPoly) and self.context == other.context
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.context, frozenset(self.terms.items())))

    # -- calculus and substitutions -------------------------------------

    def partial(self, name: str) -> "MPoly":
        """Formal partial derivative."""
        i = self.context.position(name)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                acc = terms.get(e2)
                acc = c * k if acc is None else acc + c * k
                if acc:
                    terms[e2] = acc
                elif e2 in terms:
                    del terms[e2]
        return MPoly(self.context, terms)

    def map_context(self, new_context: VarContext) -> "MPoly":
        """Reinterpret over a context containing the same variable names."""
        mapping = [new_context.position(n) for n in self.context.names]
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * new_context.arity
            for src, dst in enumerate(mapping):
                e2[dst] = e[src]
            terms[tuple(e2)] = c
        return MPoly(new_context, terms)

    def set_zero(self, name: str) -> "MPoly":
        """Substitute 0 for a variable; result context drops it."""
        i = self.context.position(name)
        sub = self.context.without(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                terms[e[:i] + e[i + 1:]] = c
        return MPoly(sub, terms)

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.context.names
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for n, k in zip(names, e):
                if k == 1:
                    factors.append(n)
                elif k > 1:
                    factors.append(f"{n}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = _coef_str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{_coef_str(c)}*{mono}"
            if parts and not body.startswith("-"):
                parts.append("+ " + body)
            elif parts:
                parts.append("- " + body[1:])
            else:
                parts.append(body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def _norm_coef(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _coef_str(c) -> str:
    return str(c)


def exact_div_coef(a, b):
    """Exact division of coefficients; stays int when possible."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm_coef(Fraction(a) / Fraction(b))


def exact_div(num: MPoly, den: MPoly) -> MPoly:
    """Exact polynomial division; raises if the division leaves a remainder.

    Used by fraction-free elimination where exactness is guaranteed.
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return num
    num._check(den)
    if den.is_constant():
        c = den.constant_value()
        return MPoly(num.context,
                     {e: exact_div_coef(v, c) for e, v in num.terms.items()})
    den_terms = den.sorted_terms()
    lt_e, lt_c = den_terms[0]
    rem = dict(num.terms)
    quo: dict = {}
    while rem:
        re, rc = max(rem.items(), key=lambda t: _term_key(t[0]))
        qe = tuple(a - b for a, b in zip(re, lt_e))
        if any(x < 0 for x in qe):
            raise ArithmeticError("polynomial division is not exact")
        qc = exact_div_coef(rc, lt_c)
        quo[qe] = qc
        for de, dc in den_terms:
            e = tuple(map(sum, zip(qe, de)))
            acc = rem.get(e, 0) - qc * dc
            if acc:
                rem[e] = acc
            elif e in rem:
                del rem[e]
    return MPoly(num.context, quo)


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------


def det_bareiss(matrix: list) -> MPoly:
    """Fraction-free determinant of a square matrix of MPoly entries.

    One-step Bareiss elimination; every division is exact over the
    coefficient ring.  Rows may be swapped (sign tracked), and among the
    candidate pivots the sparsest entry is chosen, which keeps the
    intermediate minors small for the banded matrices produced by
    Sylvester constructions.  Entries are packed into integer exponent
    keys for the elimination itself (see _packed).
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    context = matrix[0][0].context
    arity = context.arity
    # Degree bounds: terms of any minor are products of one entry per row,
    # and rows are scaled by another minor before the exact division, so
    # twice the row-sum bound is safe for every intermediate product.
    bounds = []
    for v in range(arity):
        total = 0
        for row in matrix:
            best = 0
            for entry in row:
                for e in entry.terms:
                    if e[v] > best:
                        best = e[v]
            total += best
        bounds.append(2 * total + 2)
    packer = Packer(bounds)
    packed = [[{packer.pack(e): c for e, c in entry.terms.items()}
               for entry in row] for row in matrix]
    out = det_packed(packed, packer)
    return MPoly(context, {packer.unpack(k): c for k, c in out.items()})


def y_coefficients(p: MPoly) -> list:
    """Coefficients [c_0 .. c_deg] of p as a polynomial in Y."""
    deg = p.degree_in("Y")
    return [p.coefficient_of("Y", k) for k in range(deg + 1)]


def sylvester_matrix_y(p: MPoly, q: MPoly) -> list:
    """Sylvester matrix of p, q in Y over the Y-free context.

    Layout: deg(p) shifted rows of q's coefficients on top, then deg(q)
    shifted rows of p's coefficients, all in descending Y powers.  This
    row order makes the resultant of two monic linear polynomials Y-a,
    Y-b equal b-a.
    """
    p._check(q)
    m = p.degree_in("Y")
    n = q.degree_in("Y")
    if m == 0 and n == 0:
        raise ValueError("both operands are constant in Y")
    pc = y_coefficients(p)[::-1]
    qc = y_coefficients(q)[::-1]
    sub = p.context.without("Y")
    zero = MPoly.zero(sub)
    size = m + n
    rows = []
    for r in range(m):
        row = [zero] * size
        for j, c in enumerate(qc):
            row[r + j] = c
        rows.append(row)
    for r in range(n):
        row = [zero] * size
        for j, c in enumerate(pc):
            row[r + j] = c
        rows.append(row)
    return rows


def resultant_y(p: MPoly, q: MPoly) -> MPoly:
    """Resultant of p and q with respect to Y, exact.

    Computed as the determinant of the Sylvester matrix by fraction-free
    elimination over the polynomial coefficient ring.
    """
    matrix = sylvester_matrix_y(p, q)
    return det_bareiss(matrix)


def resultant_y_cofactor(p: MPoly, q: MPoly) -> MPoly:
    """Cofactor-expansion oracle for the Sylvester determinant (small sizes)."""
    matrix = sylvester_matrix_y(p, q)

    def det(rows, cols):
        if len(cols) == 1:
            return rows[0][cols[0]]
        ctx = rows[0][cols[0]].context
        acc = MPoly.zero(ctx)
        for idx, j in enumerate(cols):
            entry = rows[0][j]
            if entry.is_zero():
                continue
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = entry * minor
            acc = acc + term if idx % 2 == 0 else acc - term
        return acc

    return det(matrix, list(range(len(matrix))))


def _companion_discriminant(f: MPoly, n: int, fv_context: VarContext) -> MPoly:
    """det of multiplication by f' on the basis 1..Y^{n-1} mod (f - V).

    Same value as the Sylvester route (the multiplication matrix is a
    presentation of the same resultant) with an n x n instead of a
    (2n-1) x (2n-1) elimination; used for large degrees.
    """
    # coefficients of f in the V-extended, Y-free context
    coeffs = [c.map_context(fv_context) for c in y_coefficients(f)]
    zero = MPoly.zero(fv_context)
    v_poly = MPoly.variable(fv_context, "V")
    # Y^n = reduction[j] * Y^j summed over j, modulo f - V
    reduction = [v_poly - coeffs[0]] + [-coeffs[j] for j in range(1, n)]
    # rows of the multiplication-by-f' matrix: start with f' itself
    row = [coeffs[j].scaled(j) for j in range(1, n + 1)]
    rows = [row]
    for _ in range(n - 1):
        top = row[n - 1]
        shifted = [zero] + row[: n - 1]
        if not top.is_zero():
            shifted = [shifted[j] + top * reduction[j] for j in range(n)]
        rows.append(shifted)
        row = shifted
    return det_bareiss(rows)


def discriminant_fv(f: MPoly, method: str = "sylvester") -> MPoly:
    """Discriminant D_f(X, V) of f(Y) - V with respect to Y.

    Returns (-1)^(n(n-1)/2) * Res_Y(f - V, df/dY) for monic f of Y-degree
    n >= 1.  With this normalization the coefficient of V^(n-1) equals
    (-1)^((n+2)(n-1)/2) * n^n.  method="companion" computes the same
    determinant from the n x n multiplication matrix instead of the
    Sylvester matrix; it exists as an independent cross-check.
    """
    if not f.context.has_y:
        raise ValueError("f has no Y variable")
    n = f.degree_in("Y")
    if n == 0:
        raise ValueError("f is constant in Y")
    lead = f.coefficient_of("Y", n)
    if not (lead.is_constant() and lead.constant_value() == 1):
        raise ValueError("f is not monic in Y")
    ctx_v = f.context.with_v()
    fv_context = ctx_v.without("Y")
    if method == "companion":
        res = _companion_discriminant(f, n, fv_context)
    elif method == "sylvester":
        fe = f.map_context(ctx_v)
        fv = fe - MPoly.variable(ctx_v, "V")
        res = resultant_y(fv, fe.partial("Y"))
    else:
        raise ValueError(f"unknown method {method!r}")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res if sign > 0 else -res


def monomial_substitute(f: MPoly, c: Sequence[int]) -> MPoly:
    """Substitute X_i -> T^{c_i}; the result lives over (T[, V][, Y])."""
    xs = f.context.x_names()
    if len(c) != len(xs):
        raise ValueError(f"substitution vector length {len(c)} != {len(xs)}")
    if any((not isinstance(ci, int)) or ci < 1 for ci in c):
        raise ValueError(f"substitution exponents must be positive integers: {c}")
    tail = tuple(n for n in f.context.names if n in ("V", "Y"))
    new_ctx = VarContext(("T",) + tail)
    x_pos = [f.context.position(n) for n in xs]
    tail_pos = [f.context.position(n) for n in tail]
    items = []
    for e, coef in f.terms.items():
        t_exp = sum(ci * e[i] for ci, i in zip(c, x_pos))
        items.append(((t_exp,) + tuple(e[i] for i in tail_pos), coef))
    return MPoly.from_terms(new_ctx, items)


def slice_v0(p: MPoly) -> MPoly:
    """p with V set to 0; the result context drops V."""
    if not p.context.has_v:
        raise ValueError("polynomial has no V variable")
    return p.set_zero("V")


def monomial_unit_exponent(h: MPoly) -> Optional[tuple]:
    """Exponent a with h = X^a * u, u(0) != 0, or None.

    Equivalent test: h != 0 and the support has a unique Pareto-minimal
    exponent (which then divides every other exponent).
    """
    if h.is_zero():
        return None
    if h.context.has_y or h.context.has_v:
        raise ValueError("expected a polynomial in the X variables only")
    minimal = pareto_minimal(h.terms.keys())
    if len(minimal) == 1:
        return minimal[0]
    return None


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*)|([-+*^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {text[pos:pos+8]!r}")
        pos = m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        elif m.group(3):
            tokens.append(("op", "^"))
        elif m.group(4):
            tokens.append(("op", m.group(4)))
    return tokens


def parse_poly(text: str, d: Optional[int] = None) -> MPoly:
    """Parse an expression like 'Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2'.

    Grammar: integers, variables X1..Xd (bare X means X1), V, Y, operators
    + - * ^ and parentheses.  The context is X1..Xd plus V and/or Y when
    they occur; d defaults to the largest X index present (at least 1).
    """
    tokens = _tokenize(text)
    names = set()
    for kind, val in tokens:
        if kind == "name":
            names.add("X1" if val == "X" else val)
    seen_d = 0
    for n in names:
        if n in ("V", "Y", "T"):
            continue
        m = re.fullmatch(r"X(\d+)", n)
        if not m:
            raise ParseError(f"unknown variable {n!r}")
        seen_d = max(seen_d, int(m.group(1)))
    if d is None:
        d = max(seen_d, 1)
    elif seen_d > d:
        raise ParseError(f"variable X{seen_d} exceeds declared d={d}")
    has_t = "T" in names
    if has_t and seen_d:
        raise ParseError("cannot mix T with X variables")
    xs = ("T",) if has_t else tuple(f"X{i}" for i in range(1, d + 1))
    context = VarContext(xs + (("V",) if "V" in names else ())
                         + (("Y",) if "Y" in names else ()))

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_expr() -> MPoly:
        node = parse_term()
        while peek() == ("op", "+") or peek() == ("op", "-"):
            _, op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> MPoly:
        node = parse_factor()
        while peek() == ("op", "*"):
            take()
            node = node * parse_factor()
        return node

    def parse_factor() -> MPoly:
        kind, val = peek()
        if kind == "op" and val == "-":
            take()
            return -parse_factor()
        if kind == "op" and val == "+":
            take()
            return parse_factor()
        base = parse_atom()
        while peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            base = base ** val
        return base

    def parse_atom() -> MPoly:
        kind, val = take() if idx < len(tokens) else (None, None)
        if kind == "int":
            return MPoly.constant(context, val)
        if kind == "name":
            name = "X1" if val == "X" else val
            return MPoly.variable(context, name)
        if kind == "op" and val == "(":
            node = parse_expr()
            k, v = take() if idx < len(tokens) else (None, None)
            if (k, v) != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return node
        raise ParseError(f"unexpected token {val!r}")

    if not tokens:
        raise ParseError("empty expression")
    result = parse_expr()
    if idx != len(tokens):
        raise ParseError(f"trailing input at token {tokens[idx]!r}")
    return result


def poly_to_json(p: MPoly) -> list:
    """Canonical term list [{'exp': [...], 'coef': 'p/q'}, ...]."""
    return [{"exp": list(e), "coef": str(c)} for e, c in p.sorted_terms()]


def poly_from_json(data: list, context: VarContext) -> MPoly:
    return MPoly.from_terms(
        context, ((tuple(t["exp"]), rat(t["coef"])) for t in data))
