"""Sparse multivariate polynomials over Q(sqrt 2).

A polynomial is a map from exponent tuples to nonzero :class:`Scalar`
coefficients.  Zero coefficients are never stored, so two polynomials are
equal exactly when their term maps are equal, and an identity check is
just "is the difference empty".
"""

from dataclasses import dataclass
from fractions import Fraction
from operator import add
import math

from .scalar import Scalar, ZERO, ONE, as_scalar


def _grlex_key(exp):
    return (sum(exp), exp)


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, c in items:
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for {nvars} variables")
                c = as_scalar(c)
                if not c:
                    continue
                prev = clean.get(exp)
                c = c if prev is None else prev + c
                if c:
                    clean[exp] = c
                else:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def _from_clean(cls, nvars, terms):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars):
        return cls._from_clean(nvars, {})

    @classmethod
    def const(cls, nvars, c):
        c = as_scalar(c)
        return cls._from_clean(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls._from_clean(nvars, {tuple(exp): ONE})

    @classmethod
    def variables(cls, nvars):
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, coeffs):
        """The linear form sum_j coeffs[j] * u_j."""
        n = len(coeffs)
        terms = {}
        for j, c in enumerate(coeffs):
            c = as_scalar(c)
            if c:
                exp = [0] * n
                exp[j] = 1
                terms[tuple(exp)] = c
        return cls._from_clean(n, terms)

    # ring operations -----------------------------------------------------

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for exp, c in small.items():
            prev = out.get(exp)
            if prev is None:
                out[exp] = c
            else:
                s = prev + c
                if s:
                    out[exp] = s
                else:
                    del out[exp]
        return MPoly._from_clean(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._from_clean(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly._from_clean(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        get = acc.get
        b_items = list(b.items())
        for e1, c1 in a.items():
            for e2, c2 in b_items:
                e = tuple(map(add, e1, e2))
                prev = get(e)
                acc[e] = c1 * c2 if prev is None else prev + c1 * c2
        return MPoly._from_clean(self.nvars, {e: c for e, c in acc.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(ONE / as_scalar(c))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            other = MPoly.const(self.nvars, other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # structure ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def homogeneous_part(self, d):
        return MPoly._from_clean(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}
        )

    def coeff(self, exp):
        return self.terms.get(tuple(exp), ZERO)

    def sorted_terms(self):
        """Terms in graded lexicographic order (highest first)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def collect(self, indices):
        """Group terms by their exponents in ``indices``.

        Returns ``{sub_exponent: MPoly}`` where each value has those
        exponents zeroed out (variable count unchanged).
        """
        indices = list(indices)
        out = {}
        for exp, c in self.terms.items():
            key = tuple(exp[i] for i in indices)
            rest = list(exp)
            for i in indices:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: MPoly._from_clean(self.nvars, v) for k, v in out.items()}

    def restrict(self, keep):
        """Re-express in the variables ``keep`` (in that order).

        Every term must have zero exponent outside ``keep``.
        """
        keep = list(keep)
        kept = set(keep)
        out = {}
        for exp, c in self.terms.items():
            if any(e for i, e in enumerate(exp) if i not in kept):
                raise ValueError("polynomial depends on a dropped variable")
            out[tuple(exp[i] for i in keep)] = c
        return MPoly._from_clean(len(keep), out)

    def embed(self, positions, nvars):
        """Place variable i at index positions[i] of an nvars-variable ring."""
        out = {}
        for exp, c in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(exp):
                if e:
                    new[positions[i]] = e
            out[tuple(new)] = c
        return MPoly._from_clean(nvars, out)

    def diff(self, i):
        out = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e:
                new = list(exp)
                new[i] = e - 1
                out[tuple(new)] = c * e
        return MPoly._from_clean(self.nvars, out)

    # evaluation -----------------------------------------------------------

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Exact value at a point with coordinates in Q(sqrt2)."""
        point = [as_scalar(v) for v in point]
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        powers = {}
        total = ZERO
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    p = powers.get(key)
                    if p is None:
                        p = powers[key] = point[i] ** e
                    v = v * p
            total = total + v
        return total

    def evaluate_float(self, point):
        """Binary64 evaluation; for oracles and spot checks only."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        total = 0.0
        for exp, c in self.terms.items():
            v = float(c)
            for i, e in enumerate(exp):
                if e:
                    v *= point[i] ** e
            total += v
        return total

    # display / io --------------------------------------------------------

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_str()})"

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), **c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj):
        n = int(obj["nvars"])
        terms = []
        for t in obj["terms"]:
            terms.append((tuple(int(e) for e in t["exp"]), Scalar.from_json(t)))
        return cls(n, terms)


def norm_sq(nvars, indices=None):
    """|x|^2 over the given variable indices (all by default)."""
    idx = range(nvars) if indices is None else indices
    terms = {}
    for i in idx:
        exp = [0] * nvars
        exp[i] = 2
        terms[tuple(exp)] = ONE
    return MPoly._from_clean(nvars, terms)


def grad(F):
    return [F.diff(i) for i in range(F.nvars)]


def laplacian(F):
    out = MPoly.zero(F.nvars)
    for i in range(F.nvars):
        out = out + F.diff(i).diff(i)
    return out


def grad_inner(F, G, indices=None):
    """<grad F, grad G>, optionally over a subset of the variables."""
    if F.nvars != G.nvars:
        raise ValueError("variable count mismatch")
    idx = range(F.nvars) if indices is None else indices
    out = MPoly.zero(F.nvars)
    same = F is G
    for i in idx:
        dF = F.diff(i)
        if not dF:
            continue
        dG = dF if same else G.diff(i)
        if dG:
            out = out + dF * dG
    return out


def subst_linear(F, rows, new_nvars):
    """Substitute x_i <- sum_j rows[i][j] * u_j and expand exactly."""
    if len(rows) != F.nvars:
        raise ValueError(f"need {F.nvars} substitution rows, got {len(rows)}")
    forms = []
    for r in rows:
        if len(r) != new_nvars:
            raise ValueError(f"substitution row has {len(r)} entries, expected {new_nvars}")
        forms.append(MPoly.linear(r))
    cache = {}

    def power(i, e):
        key = (i, e)
        p = cache.get(key)
        if p is None:
            p = forms[i] if e == 1 else power(i, e - 1) * forms[i]
            cache[key] = p
        return p

    acc = {}
    for exp, c in F.terms.items():
        term = MPoly.const(new_nvars, c)
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        for e2, c2 in term.terms.items():
            prev = acc.get(e2)
            acc[e2] = c2 if prev is None else prev + c2
    return MPoly._from_clean(new_nvars, {e: c for e, c in acc.items() if c})


@dataclass
class CMResult:
    ok: bool
    grad_ok: bool
    laplacian_ok: bool
    grad_residual_terms: int
    laplacian_residual_terms: int
    laplacian: MPoly

    @property
    def residual_terms(self):
        return self.grad_residual_terms + self.laplacian_residual_terms


def verify_cm(F, g, m1, m2):
    """Check the two Cartan-Muenzner identities as exact polynomial identities.

    |grad F|^2 = g^2 |x|^(2g-2)   and   Delta F = (m2 - m1) g^2 |x|^(g-2) / 2.
    """
    if not F.is_homogeneous(g) or F.is_zero():
        raise ValueError(f"F is not homogeneous of degree {g}")
    if g % 2 and m1 != m2:
        raise ValueError("odd g forces m1 == m2")
    n = F.nvars
    r2 = norm_sq(n)
    grad_res = grad_inner(F, F) - (r2 ** (g - 1)).scale(g * g)
    lap = laplacian(F)
    if g % 2:
        target = MPoly.zero(n)
    else:
        target = (r2 ** ((g - 2) // 2)).scale(Fraction((m2 - m1) * g * g, 2))
    lap_res = lap - target
    return CMResult(
        ok=not grad_res and not lap_res,
        grad_ok=not grad_res,
        laplacian_ok=not lap_res,
        grad_residual_terms=len(grad_res),
        laplacian_residual_terms=len(lap_res),
        laplacian=lap,
    )


def finite_difference_grad(F, point, h=1e-6):
    """Central differences of the float evaluation; an oracle for grad()."""
    out = []
    for i in range(F.nvars):
        up = list(point)
        dn = list(point)
        up[i] += h
        dn[i] -= h
        out.append((F.evaluate_float(up) - F.evaluate_float(dn)) / (2 * h))
    return out


def rel_error(a, b):
    num = math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
    den = max(math.sqrt(sum(y * y for y in b)), 1e-300)
    return num / den
