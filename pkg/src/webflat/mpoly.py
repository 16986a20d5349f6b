"""Sparse multivariate polynomials and rational functions over Q(zeta12).

Exponent vectors are packed into a single Python int, 16 bits per variable,
first variable in the most significant slot.  With that layout

* multiplying monomials is integer addition,
* comparing two monomials of equal total degree in lex order (first variable
  largest) is integer comparison,

so the graded-lex sort key of a monomial is ``(degree << 16n) + key``.
Exponents must stay below 2**15; the top bit of each slot is a guard bit used
by the divisibility test.

Variables are kept sorted by a fixed global order (see :func:`var_rank`), so
two polynomials over the same variable names always share the same packing.
Binary operations on polynomials with different variable sets first lift
both operands to the union.
"""

from __future__ import annotations

import heapq
from functools import reduce

from gmpy2 import mpq

from .errors import BothConstant, NotDivisible, ZeroPolynomial
from .exactnum import FieldElement, as_rational, embed_complex, render_scalar

_MPQ = type(mpq())
_ZERO = mpq(0)
_ONE = mpq(1)

BITS = 16
MASK = (1 << BITS) - 1
MAX_EXP = 1 << (BITS - 1)

_CORE_ORDER = ("x", "y", "z", "u", "v", "p", "q", "w", "t", "T", "eps")
_CORE_RANK = {name: i for i, name in enumerate(_CORE_ORDER)}


def var_rank(name: str):
    """Global variable order: x, y, z, u, v, p, q, w, t, T, eps, then parameters."""
    r = _CORE_RANK.get(name)
    if r is not None:
        return (0, r, "")
    return (1, 0, name)


def sort_vars(names):
    return tuple(sorted(set(names), key=var_rank))


def scalar(c):
    """Normalize a coefficient to mpq or FieldElement."""
    if isinstance(c, _MPQ):
        return c
    if isinstance(c, FieldElement):
        return c if not c.is_rational() else c.c[0]
    return as_rational(c)


def _inv(c):
    if isinstance(c, FieldElement):
        return c.inverse()
    return _ONE / c


class _Layout:
    """Packing helpers for a fixed variable tuple (cached per tuple)."""

    _cache: dict = {}

    def __init__(self, names):
        self.names = names
        self.n = n = len(names)
        self.index = {v: i for i, v in enumerate(names)}
        self.shift = [BITS * (n - 1 - i) for i in range(n)]
        self.ones = sum(1 << (BITS * i) for i in range(n))
        self.guard = sum(1 << (BITS * i + BITS - 1) for i in range(n))
        self.top = BITS * (n - 1) if n else 0

    @classmethod
    def get(cls, names):
        lay = cls._cache.get(names)
        if lay is None:
            lay = cls._cache.setdefault(names, _Layout(names))
        return lay

    def degree(self, key: int) -> int:
        if not self.n:
            return 0
        return ((key * self.ones) >> self.top) & MASK

    def unpack(self, key: int):
        return tuple((key >> s) & MASK for s in self.shift)

    def pack(self, exps) -> int:
        k = 0
        for e in exps:
            if e < 0 or e >= MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            k = (k << BITS) | e
        return k

    def sortkey(self, key: int) -> int:
        return (self.degree(key) << (BITS * self.n)) + key

    def divides(self, a: int, b: int) -> bool:
        """Monomial a divides monomial b."""
        g = self.guard
        return ((b + g) - a) & g == g

    def var_exp(self, key: int, i: int) -> int:
        return (key >> self.shift[i]) & MASK


class MPoly:
    """Sparse polynomial; immutable by convention.

    ``vars`` is a tuple of variable names in global order and ``terms`` maps
    packed exponent keys to nonzero scalars (mpq or FieldElement).
    """

    __slots__ = ("vars", "terms", "_lay")

    def __init__(self, vars=(), terms=None):
        vs = tuple(vars)
        if vs != sort_vars(vs) or len(set(vs)) != len(vs):
            raise ValueError(f"variables must be distinct and in global order: {vs}")
        self.vars = vs
        self._lay = _Layout.get(vs)
        self.terms = {} if terms is None else terms

    # ---------------------------------------------------------------- constructors
    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj._lay = _Layout.get(vars)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, vars=()):
        return cls._raw(sort_vars(vars), {})

    @classmethod
    def const(cls, c, vars=()):
        c = scalar(c)
        return cls._raw(sort_vars(vars), {0: c} if c else {})

    @classmethod
    def var(cls, name: str, vars=()):
        vs = sort_vars(tuple(vars) + (name,))
        lay = _Layout.get(vs)
        return cls._raw(vs, {1 << lay.shift[lay.index[name]]: _ONE})

    @classmethod
    def from_dict(cls, vars, data):
        """Build from {exponent tuple: coefficient}, with exponents in the order of ``vars``."""
        vars = tuple(vars)
        target = sort_vars(vars)
        lay = _Layout.get(target)
        perm = [vars.index(v) for v in target]
        terms = {}
        for exps, c in data.items():
            c = scalar(c)
            if not c:
                continue
            k = lay.pack([exps[j] for j in perm])
            c = terms.get(k, _ZERO) + c
            if c:
                terms[k] = c
            else:
                terms.pop(k, None)
        return cls._raw(target, terms)

    # ---------------------------------------------------------------- basics
    @property
    def layout(self):
        return self._lay

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, _ZERO)

    def items(self):
        """(exponent tuple, coefficient) pairs in decreasing graded-lex order."""
        lay = self._lay
        for k in sorted(self.terms, key=lay.sortkey, reverse=True):
            yield lay.unpack(k), self.terms[k]

    def as_dict(self):
        lay = self._lay
        return {lay.unpack(k): c for k, c in self.terms.items()}

    def used_vars(self):
        lay = self._lay
        acc = 0
        for k in self.terms:
            acc |= k
        return tuple(v for i, v in enumerate(self.vars) if (acc >> lay.shift[i]) & MASK)

    def free_symbols(self):
        return set(self.used_vars())

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        lay = self._lay
        return max(lay.degree(k) for k in self.terms)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self._lay.index.get(var)
        if i is None:
            return 0
        s = self._lay.shift[i]
        return max((k >> s) & MASK for k in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms:
            raise ZeroPolynomial("min degree of zero polynomial")
        i = self._lay.index.get(var)
        if i is None:
            return 0
        s = self._lay.shift[i]
        return min((k >> s) & MASK for k in self.terms)

    def leading_key(self):
        if not self.terms:
            raise ZeroPolynomial("leading term of zero polynomial")
        return max(self.terms, key=self._lay.sortkey)

    def leading_coeff(self):
        """Coefficient of the graded-lex leading monomial."""
        if not self.terms:
            return _ZERO
        return self.terms[self.leading_key()]

    def leading_term(self):
        k = self.leading_key()
        return MPoly._raw(self.vars, {k: self.terms[k]})

    def monic(self):
        """Scale so that the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self.scale(_inv(lc))

    # ---------------------------------------------------------------- variable sets
    def with_vars(self, vars):
        """Lift (or drop unused) variables so that ``self.vars == sort_vars(vars)``."""
        target = sort_vars(vars)
        if target == self.vars:
            return self
        lay = self._lay
        tlay = _Layout.get(target)
        mapping = []
        for i, v in enumerate(self.vars):
            j = tlay.index.get(v)
            if j is None:
                s = lay.shift[i]
                if any((k >> s) & MASK for k in self.terms):
                    raise ValueError(f"variable {v} is used and cannot be dropped")
                continue
            mapping.append((lay.shift[i], tlay.shift[j]))
        if all(a == b for a, b in mapping) and len(mapping) == len(self.vars) == len(target):
            return MPoly._raw(target, dict(self.terms))
        terms = {}
        for k, c in self.terms.items():
            nk = 0
            for s_old, s_new in mapping:
                nk |= ((k >> s_old) & MASK) << s_new
            terms[nk] = c
        return MPoly._raw(target, terms)

    def drop_unused(self):
        return self.with_vars(self.used_vars())

    def _align(self, other):
        if isinstance(other, MPoly):
            if other.vars == self.vars:
                return self, other
            vs = sort_vars(self.vars + other.vars)
            return self.with_vars(vs), other.with_vars(vs)
        return self, MPoly.const(other, self.vars)

    # ---------------------------------------------------------------- arithmetic
    def __neg__(self):
        return MPoly._raw(self.vars, {k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = scalar(other)
            except TypeError:
                return NotImplemented
            if not other:
                return self
            terms = dict(self.terms)
            c = terms.get(0, _ZERO) + other
            if c:
                terms[0] = c
            else:
                terms.pop(0)
            return MPoly._raw(self.vars, terms)
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms = dict(a.terms)
        for k, c in b.terms.items():
            s = terms.get(k)
            if s is None:
                terms[k] = c
            else:
                s = s + c
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return MPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = scalar(other)
            except TypeError:
                return NotImplemented
            return self + (-other)
        a, b = self._align(other)
        terms = dict(a.terms)
        for k, c in b.terms.items():
            s = terms.get(k)
            if s is None:
                terms[k] = -c
            else:
                s = s - c
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return MPoly._raw(a.vars, terms)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = scalar(c)
        if not c:
            return MPoly._raw(self.vars, {})
        if c == 1:
            return self
        terms = {}
        for k, v in self.terms.items():
            terms[k] = v * c
        return MPoly._raw(self.vars, terms)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return MPoly._raw(a.vars, {})
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms = {}
        get = terms.get
        bt = list(b.terms.items())
        for ka, ca in a.terms.items():
            for kb, cb in bt:
                k = ka + kb
                s = get(k)
                if s is None:
                    terms[k] = ca * cb
                else:
                    terms[k] = s + ca * cb
        return MPoly._raw(a.vars, {k: c for k, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        if n == 0:
            return MPoly.const(1, self.vars)
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            lay = self._lay
            if max(lay.unpack(k), default=0) * n >= MAX_EXP:
                raise OverflowError("exponent overflow")
            return MPoly._raw(self.vars, {k * n: c**n if not isinstance(c, FieldElement) else pow(c, n)})
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_constant() and other.terms:
                return self.scale(_inv(other.constant_value()))
            return exact_div(self, other)
        return self.scale(_inv(scalar(other)))

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            a, b = self._align(other)
            return a.terms == b.terms
        try:
            c = scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {0: c}

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        p = self.drop_unused()
        return hash((p.vars, frozenset(p.terms.items())))

    def __repr__(self):
        return f"MPoly({render(self)!r})"

    def __str__(self):
        return render(self)

    # ---------------------------------------------------------------- structure
    def coeffs_in(self, var: str):
        """{k: coefficient of var^k} with coefficients over the same variable tuple."""
        i = self._lay.index.get(var)
        if i is None:
            return {0: self} if self.terms else {}
        s = self._lay.shift[i]
        mask = MASK << s
        out: dict = {}
        for k, c in self.terms.items():
            e = (k >> s) & MASK
            out.setdefault(e, {})[k & ~mask] = c
        return {e: MPoly._raw(self.vars, t) for e, t in out.items()}

    def coeff_list(self, var: str):
        """Dense coefficient list [c_0, ..., c_n] in ``var``."""
        cs = self.coeffs_in(var)
        if not cs:
            return []
        n = max(cs)
        z = MPoly._raw(self.vars, {})
        return [cs.get(e, z) for e in range(n + 1)]

    def coefficients(self, vars):
        """Split as a polynomial in ``vars``: {exponent tuple: coefficient MPoly}."""
        vars = tuple(vars)
        lay = self._lay
        idx = [lay.index.get(v) for v in vars]
        mask = 0
        for i in idx:
            if i is not None:
                mask |= MASK << lay.shift[i]
        out: dict = {}
        for k, c in self.terms.items():
            e = tuple(0 if i is None else (k >> lay.shift[i]) & MASK for i in idx)
            out.setdefault(e, {})[k & ~mask] = c
        return {e: MPoly._raw(self.vars, t) for e, t in out.items()}

    def coeff(self, monomial: dict):
        """Coefficient (an MPoly in the other variables) of a monomial given as {var: exp}."""
        vs = tuple(monomial)
        parts = self.coefficients(vs)
        key = tuple(monomial[v] for v in vs)
        return parts.get(key, MPoly._raw(self.vars, {}))

    def monomial_content_key(self) -> int:
        """Packed key of the gcd of all monomials."""
        if not self.terms:
            return 0
        lay = self._lay
        mins = None
        for k in self.terms:
            e = lay.unpack(k)
            mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
        return lay.pack(mins)

    def shift_down(self, key: int):
        """Divide by the monomial ``key`` (which must divide every term)."""
        if not key:
            return self
        return MPoly._raw(self.vars, {k - key: c for k, c in self.terms.items()})

    def content_scalar(self):
        return self.leading_coeff()

    # ---------------------------------------------------------------- calculus & substitution
    def diff(self, var: str):
        return derivative(self, var)

    def subs(self, mapping):
        """Substitute variables by polynomials or scalars."""
        return substitute(self, mapping)

    def eval_complex(self, point):
        """Float evaluation; ``point`` maps every used variable to a complex number."""
        lay = self._lay
        vals = [complex(point[v]) if v in point else None for v in self.vars]
        total = 0j
        for k, c in self.terms.items():
            term = embed_complex(c)
            for i, s in enumerate(lay.shift):
                e = (k >> s) & MASK
                if e:
                    if vals[i] is None:
                        raise KeyError(self.vars[i])
                    term *= vals[i] ** e
            total += term
        return total

    def evaluate(self, point):
        """Exact evaluation at scalars; missing variables stay symbolic."""
        return substitute(self, point)


def _coerce(f, vars=()):
    if isinstance(f, MPoly):
        return f
    return MPoly.const(f, vars)


def align(*polys):
    vs = sort_vars(v for p in polys for v in p.vars)
    return [p.with_vars(vs) for p in polys]


def derivative(f: MPoly, var: str) -> MPoly:
    lay = f._lay
    i = lay.index.get(var)
    if i is None:
        return MPoly._raw(f.vars, {})
    s = lay.shift[i]
    one = 1 << s
    terms = {}
    for k, c in f.terms.items():
        e = (k >> s) & MASK
        if e:
            terms[k - one] = c * e
    return MPoly._raw(f.vars, terms)


def substitute(f: MPoly, mapping) -> MPoly:
    """Replace variables by MPoly/scalar images."""
    mapping = {v: img for v, img in mapping.items() if v in f._lay.index}
    if not mapping:
        return f
    lay = f._lay
    keep = [v for v in f.vars if v not in mapping]
    images = {v: _coerce(img) for v, img in mapping.items()}
    allv = sort_vars(tuple(keep) + tuple(w for im in images.values() for w in im.vars))
    images = {v: im.with_vars(allv) for v, im in images.items()}
    out_lay = _Layout.get(allv)
    keep_idx = [(lay.shift[lay.index[v]], out_lay.shift[out_lay.index[v]]) for v in keep]
    sub_idx = [(lay.shift[lay.index[v]], v) for v in mapping]
    pow_cache: dict = {}

    def power(v, e):
        key = (v, e)
        r = pow_cache.get(key)
        if r is None:
            if e == 1:
                r = images[v]
            elif e % 2 == 0:
                h = power(v, e // 2)
                r = h * h
            else:
                r = power(v, e - 1) * images[v]
            pow_cache[key] = r
        return r

    # group terms by the exponents of substituted variables
    groups: dict = {}
    for k, c in f.terms.items():
        sk = tuple((k >> s) & MASK for s, _ in sub_idx)
        nk = 0
        for s_old, s_new in keep_idx:
            nk |= ((k >> s_old) & MASK) << s_new
        g = groups.setdefault(sk, {})
        g[nk] = c
    result = MPoly._raw(allv, {})
    for sk, terms in groups.items():
        part = MPoly._raw(allv, terms)
        for (s, v), e in zip(sub_idx, sk):
            if e:
                part = part * power(v, e)
        result = result + part
    return result


def valuation(f: MPoly, vars=None) -> int:
    """Minimal total degree in ``vars`` (all variables by default)."""
    if not f.terms:
        raise ZeroPolynomial("valuation of the zero polynomial")
    vars = f.vars if vars is None else tuple(vars)
    lay = f._lay
    idx = [lay.shift[lay.index[v]] for v in vars if v in lay.index]
    return min(sum((k >> s) & MASK for s in idx) for k in f.terms)


def jet(f: MPoly, vars=None, k: int = 0) -> MPoly:
    """Truncation to total degree <= k in ``vars``."""
    vars = f.vars if vars is None else tuple(vars)
    lay = f._lay
    idx = [lay.shift[lay.index[v]] for v in vars if v in lay.index]
    return MPoly._raw(f.vars, {key: c for key, c in f.terms.items() if sum((key >> s) & MASK for s in idx) <= k})


def homogeneous_part(f: MPoly, vars, k: int) -> MPoly:
    lay = f._lay
    idx = [lay.shift[lay.index[v]] for v in vars if v in lay.index]
    return MPoly._raw(f.vars, {key: c for key, c in f.terms.items() if sum((key >> s) & MASK for s in idx) == k})


# -------------------------------------------------------------------- division
def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """Quotient of an exact division; raises NotDivisible otherwise."""
    f, g = _coerce(f), _coerce(g)
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    f, g = f._align(g)
    if not f.terms:
        return f
    if g.is_constant():
        return f.scale(_inv(g.terms[0]))
    lay = f._lay
    sk = lay.sortkey
    if len(g.terms) == 1:
        (kg, cg), = g.terms.items()
        ic = _inv(cg)
        out = {}
        for k, c in f.terms.items():
            if not lay.divides(kg, k):
                raise NotDivisible("monomial divisor does not divide")
            out[k - kg] = c * ic
        return MPoly._raw(f.vars, out)
    gl = max(g.terms, key=sk)
    gi = _inv(g.terms[gl])
    g_rest = [(k, c) for k, c in g.terms.items() if k != gl]
    rem = dict(f.terms)
    heap = [-sk(k) for k in rem]
    heapq.heapify(heap)
    # remember keys by sortkey (sortkey is injective)
    by_sort = {sk(k): k for k in rem}
    q = {}
    while heap:
        s = -heapq.heappop(heap)
        k = by_sort.get(s)
        if k is None:
            continue
        c = rem.get(k)
        if c is None:
            continue
        if not lay.divides(gl, k):
            raise NotDivisible("leading monomial not divisible")
        m = k - gl
        qc = c * gi
        q[m] = qc
        del rem[k]
        for kk, cc in g_rest:
            t = m + kk
            v = rem.get(t)
            if v is None:
                rem[t] = -qc * cc
                st = sk(t)
                by_sort[st] = t
                heapq.heappush(heap, -st)
            else:
                v = v - qc * cc
                if v:
                    rem[t] = v
                else:
                    del rem[t]
    return MPoly._raw(f.vars, q)


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


def _lc_in(f: MPoly, var: str):
    cs = f.coeffs_in(var)
    return cs[max(cs)]


def prem(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g in ``var``."""
    f, g = f._align(g)
    df, dg = f.degree(var), g.degree(var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    if df < dg:
        return f
    lay = f._lay
    one = 1 << lay.shift[lay.index[var]]
    lcg = _lc_in(g, var)
    e = df - dg + 1
    r = f
    while r.terms and r.degree(var) >= dg:
        dr = r.degree(var)
        lcr = _lc_in(r, var)
        shifted = MPoly._raw(g.vars, {k + one * (dr - dg): c for k, c in g.terms.items()})
        r = lcg * r - lcr * shifted
        e -= 1
    if e > 0:
        r = r * lcg**e
    return r


# -------------------------------------------------------------------- gcd
def _scalar_gcd_norm(f: MPoly) -> MPoly:
    return f.monic()


def gcd(f, g) -> MPoly:
    """Greatest common divisor with graded-lex leading coefficient 1."""
    f, g = _coerce(f), _coerce(g)
    f, g = f._align(g)
    return _gcd(f, g).monic()


def _gcd(f: MPoly, g: MPoly) -> MPoly:
    if not f.terms:
        return g
    if not g.terms:
        return f
    vars = f.vars
    one = MPoly._raw(vars, {0: _ONE})
    if f.is_constant() or g.is_constant():
        return one
    lay = f._lay
    # monomial contents split off first
    mf, mg = f.monomial_content_key(), g.monomial_content_key()
    mono = 0
    if mf or mg:
        ef, eg = lay.unpack(mf), lay.unpack(mg)
        mono = lay.pack([min(a, b) for a, b in zip(ef, eg)])
        f, g = f.shift_down(mf), g.shift_down(mg)
        if f.is_constant() or g.is_constant():
            return MPoly._raw(vars, {mono: _ONE})
    if len(f.terms) == 1 or len(g.terms) == 1:
        return MPoly._raw(vars, {mono: _ONE})
    uf, ug = set(f.used_vars()), set(g.used_vars())
    # variables present in only one argument cannot occur in the gcd
    only = (uf ^ ug)
    if only:
        for v in sorted(only, key=var_rank):
            if v in uf:
                f = _content(f, v)
            else:
                g = _content(g, v)
            if f.is_constant() or g.is_constant():
                return MPoly._raw(vars, {mono: _ONE})
        r = _gcd(f, g)
        return _mono_mul(r, mono)
    main = min(uf, key=var_rank)
    rest = [v for v in uf if v != main]
    if not rest:
        r = _univariate_gcd(f, g, main)
    else:
        cf, cg = _content(f, main), _content(g, main)
        c = _gcd(cf, cg)
        pf, pg = exact_div(f, cf), exact_div(g, cg)
        r = _subresultant_gcd(pf, pg, main)
        r = r * c
    return _mono_mul(r, mono)


def _mono_mul(p: MPoly, key: int) -> MPoly:
    if not key:
        return p
    return MPoly._raw(p.vars, {k + key: c for k, c in p.terms.items()})


def _content(f: MPoly, var: str) -> MPoly:
    """gcd of the coefficients of f viewed in ``var``."""
    cs = sorted(f.coeffs_in(var).values(), key=len)
    g = cs[0]
    for c in cs[1:]:
        if g.is_constant():
            break
        g = _gcd(g, c)
    if g.is_constant():
        return MPoly._raw(f.vars, {0: _ONE})
    return g.monic()


def content(f: MPoly, var: str) -> MPoly:
    return _content(f, var) if f.terms else f


def primitive_part(f: MPoly, var: str) -> MPoly:
    if not f.terms:
        return f
    return exact_div(f, _content(f, var))


def _univariate_gcd(f: MPoly, g: MPoly, var: str) -> MPoly:
    a, b = f.monic(), g.monic()
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while b.terms:
        r = _urem(a, b, var)
        a, b = b, r.monic() if r.terms else r
    return a.monic()


def _urem(a: MPoly, b: MPoly, var: str) -> MPoly:
    lay = a._lay
    s = lay.shift[lay.index[var]]
    db = b.degree(var)
    kb = max(b.terms, key=lambda k: (k >> s) & MASK)
    ib = _inv(b.terms[kb])
    r = dict(a.terms)
    while r:
        kr = max(r, key=lambda k: (k >> s) & MASK)
        dr = (kr >> s) & MASK
        if dr < db:
            break
        q = r[kr] * ib
        off = (dr - db) << s
        for k, c in b.terms.items():
            t = k + off
            v = r.get(t, _ZERO) - q * c
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return MPoly._raw(a.vars, r)


def _subresultant_gcd(f: MPoly, g: MPoly, var: str) -> MPoly:
    """gcd of primitive f, g in var via the subresultant PRS."""
    if f.degree(var) < g.degree(var):
        f, g = g, f
    if g.degree(var) == 0:
        return MPoly._raw(f.vars, {0: _ONE})
    one = MPoly._raw(f.vars, {0: _ONE})
    a, b = f, g
    gg = one
    h = one
    while True:
        d = a.degree(var) - b.degree(var)
        r = prem(a, b, var)
        if not r.terms:
            break
        if r.degree(var) == 0:
            return one
        a = b
        b = exact_div(r, gg * h**d)
        gg = _lc_in(a, var)
        if d == 0:
            pass
        elif d == 1:
            h = gg
        else:
            h = exact_div(gg**d, h ** (d - 1))
    return primitive_part(b, var)


def lcm(f: MPoly, g: MPoly) -> MPoly:
    f, g = f._align(g)
    return exact_div(f * g, gcd(f, g)).monic()


def squarefree_part(f: MPoly, var: str | None = None) -> MPoly:
    """Product of the distinct irreducible factors (characteristic zero).

    With ``var`` given only the factors involving ``var`` are made squarefree;
    the part free of ``var`` is kept as is.
    """
    if not f.terms or f.is_constant():
        return f
    if var is None:
        g = f
        for v in f.used_vars():
            d = derivative(g, v)
            if d.terms:
                g = exact_div(g, gcd(g, d))
        return g.monic()
    d = derivative(f, var)
    if not d.terms:
        return f
    return exact_div(f, gcd(f, d))


# -------------------------------------------------------------------- linear algebra
def _as_poly_matrix(M):
    rows = [[_coerce(e) for e in row] for row in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    vs = sort_vars(v for r in rows for e in r for v in e.vars)
    return [[e.with_vars(vs) for e in r] for r in rows], vs


def det_cofactor(M) -> MPoly:
    """Laplace expansion along the first row (reference implementation)."""
    rows, vs = _as_poly_matrix(M)
    return _cofactor(rows, vs)


def _cofactor(rows, vs):
    n = len(rows)
    if n == 0:
        return MPoly.const(1, vs)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = MPoly.zero(vs)
    for j in range(n):
        if not rows[0][j].terms:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _cofactor(minor, vs)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_fraction_free(M) -> MPoly:
    """Determinant by Bareiss elimination with exact divisions."""
    rows, vs = _as_poly_matrix(M)
    n = len(rows)
    if n <= 3:
        return _cofactor(rows, vs)
    a = [list(r) for r in rows]
    sign = 1
    prev = MPoly.const(1, vs)
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if a[i][k].terms and (piv is None or len(a[i][k].terms) < len(a[piv][k].terms)):
                piv = i
        if piv is None:
            return MPoly.zero(vs)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                num = akk * row_i[j]
                if aik.terms and row_k[j].terms:
                    num = num - aik * row_k[j]
                row_i[j] = exact_div(num, prev) if prev.terms != {0: _ONE} else num
            row_i[k] = MPoly.zero(vs)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def sylvester_matrix(f: MPoly, g: MPoly, var: str):
    f, g = f._align(g)
    fc = f.coeff_list(var)[::-1]
    gc = g.coeff_list(var)[::-1]
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    z = MPoly.zero(f.vars)
    M = []
    for i in range(n):
        M.append([z] * i + fc + [z] * (size - m - 1 - i))
    for i in range(m):
        M.append([z] * i + gc + [z] * (size - n - 1 - i))
    return M


def resultant(f, g, var: str) -> MPoly:
    """Sylvester resultant in ``var`` (rows of f first)."""
    f, g = _coerce(f), _coerce(g)
    f, g = f._align(g)
    m, n = f.degree(var), g.degree(var)
    if m <= 0 and n <= 0:
        raise BothConstant(f"neither polynomial depends on {var}")
    if m < 0 or n < 0:
        return MPoly.zero(f.vars)
    if m == 0:
        return f**n
    if n == 0:
        return g**m
    return det_fraction_free(sylvester_matrix(f, g, var))


def scalar_rank(rows):
    """Rank of a matrix of scalars by exact Gaussian elimination."""
    a = [[scalar(c) for c in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(a)):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = _inv(a[rank][col])
        prow = [c * inv for c in a[rank]]
        a[rank] = prow
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        rank += 1
        if rank == len(a):
            break
    return rank


def scalar_nullspace(rows, ncols):
    """Basis of the right nullspace of a scalar matrix."""
    a = [[scalar(c) for c in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(a)):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = _inv(a[rank][col])
        a[rank] = [c * inv for c in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [_ZERO] * ncols
        vec[fc] = _ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -a[r][fc]
        basis.append(vec)
    return basis


def scalar_inverse(M):
    """Inverse of a square scalar matrix (raises ZeroDivisionError if singular)."""
    n = len(M)
    a = [[scalar(c) for c in r] + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(M)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = _inv(a[col][col])
        a[col] = [c * inv for c in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [r[n:] for r in a]


def scalar_det(M):
    rows = [[MPoly.const(c) for c in r] for r in M]
    return det_fraction_free(rows).constant_value() if rows else _ONE


# -------------------------------------------------------------------- rational functions
class RatFunc:
    """Reduced quotient num/den with graded-lex monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        num = _coerce(num)
        den = MPoly.const(1, num.vars) if den is None else _coerce(den)
        if not den.terms:
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = num._align(den)
        if reduce:
            if not num.terms:
                den = MPoly.const(1, num.vars)
            else:
                g = gcd(num, den)
                if not g.is_constant():
                    num, den = exact_div(num, g), exact_div(den, g)
            lc = den.leading_coeff()
            if lc != 1:
                ic = _inv(lc)
                num, den = num.scale(ic), den.scale(ic)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return not self.num.terms

    def is_polynomial(self):
        return self.den.is_constant()

    def __add__(self, other):
        o = _as_ratfunc(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other):
        return _as_ratfunc(other) - self

    def __mul__(self, other):
        o = _as_ratfunc(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_ratfunc(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den**-n, self.num**-n)
        return RatFunc(self.num**n, self.den**n, reduce=False)

    def __eq__(self, other):
        try:
            o = _as_ratfunc(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, var):
        n, d = self.num, self.den
        return RatFunc(derivative(n, var) * d - n * derivative(d, var), d * d)

    def subs(self, mapping):
        return RatFunc(substitute(self.num, mapping), substitute(self.den, mapping))

    def __repr__(self):
        return f"RatFunc({render(self.num)!r}, {render(self.den)!r})"

    def __str__(self):
        if self.den.is_constant():
            return render(self.num)
        return f"({render(self.num)})/({render(self.den)})"


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MPoly):
        return RatFunc(x, None, reduce=False)
    return RatFunc(MPoly.const(x), None, reduce=False)


# -------------------------------------------------------------------- text
def _render_monomial(vars, exps):
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def render(f) -> str:
    """Canonical text: decreasing graded-lex terms, explicit '*', '^' powers."""
    if isinstance(f, RatFunc):
        return str(f)
    if not isinstance(f, MPoly):
        return render_scalar(scalar(f))
    if not f.terms:
        return "0"
    out = []
    for exps, c in f.items():
        mono = _render_monomial(f.vars, exps)
        neg = False
        if isinstance(c, FieldElement):
            cs = render_scalar(c)
        else:
            neg = c < 0
            cs = str(-c if neg else c)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def poly(text: str, params=None) -> MPoly:
    """Parse canonical polynomial text (convenience wrapper around the form parser)."""
    from .parser import parse_poly

    return parse_poly(text)


def random_poly(rng, vars, degree: int, nterms: int, height: int = 5) -> MPoly:
    """Random polynomial with integer coefficients (testing helper)."""
    vars = sort_vars(vars)
    data = {}
    for _ in range(nterms):
        while True:
            exps = tuple(rng.randint(0, degree) for _ in vars)
            if sum(exps) <= degree:
                break
        data[exps] = data.get(exps, 0) + rng.randint(-height, height)
    return MPoly.from_dict(vars, data)


def product(polys, vars=()):
    return reduce(lambda a, b: a * b, polys, MPoly.const(1, vars))


__all__ = [
    "MPoly",
    "RatFunc",
    "derivative",
    "exact_div",
    "divides",
    "gcd",
    "lcm",
    "content",
    "primitive_part",
    "squarefree_part",
    "prem",
    "det_fraction_free",
    "det_cofactor",
    "resultant",
    "sylvester_matrix",
    "valuation",
    "jet",
    "homogeneous_part",
    "substitute",
    "render",
    "scalar_rank",
    "scalar_nullspace",
    "scalar_inverse",
    "var_rank",
    "sort_vars",
    "align",
]
