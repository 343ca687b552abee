"""Sparse multivariate (Laurent) polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class Polynomial:
    """Immutable sparse polynomial.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` coefficients.
    With ``laurent=True`` negative exponents are allowed.
    """

    __slots__ = ("n_vars", "terms", "laurent")

    def __init__(self, n_vars: int, terms: Mapping | Iterable = (), laurent: bool = False):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n_vars:
                raise ValueError(f"exponent {exp} has wrong length for {n_vars} variables")
            if not laurent and any(e < 0 for e in exp):
                raise ValueError("negative exponent in a non-Laurent polynomial")
            c = Fraction(c)
            if c:
                c = clean.get(exp, 0) + c
                if c:
                    clean[exp] = c
                else:
                    clean.pop(exp, None)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "laurent", laurent)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1, laurent: bool = False) -> "Polynomial":
        return cls(len(exp), {tuple(exp): coeff}, laurent=laurent)

    @classmethod
    def constant(cls, n_vars: int, c=1, laurent: bool = False) -> "Polynomial":
        return cls(n_vars, {(0,) * n_vars: c}, laurent=laurent)

    @classmethod
    def variable(cls, i: int, n_vars: int, laurent: bool = False) -> "Polynomial":
        exp = [0] * n_vars
        exp[i] = 1
        return cls(n_vars, {tuple(exp): 1}, laurent=laurent)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n_vars == other.n_vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n_vars != self.n_vars:
                raise ValueError("variable count mismatch")
            return other
        return Polynomial.constant(self.n_vars, other, self.laurent)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.n_vars, terms, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n_vars, {e: -c for e, c in self.terms.items()}, self.laurent)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.n_vars, terms, self.laurent or other.laurent)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n_vars, 1, self.laurent)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def weight(self, exp: Sequence[int], weights: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(exp, weights))

    def max_weight(self, weights: Sequence[int]):
        return max(self.weight(e, weights) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n_vars, Fraction(0))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def substitute(self, i: int, value) -> "Polynomial":
        """Set variable ``i`` to a number, keeping it as a dead variable."""
        value = Fraction(value)
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] < 0 and value == 0:
                raise ZeroDivisionError("negative power of a zero substitution")
            ne = e[:i] + (0,) + e[i + 1:]
            terms[ne] = terms.get(ne, 0) + c * value ** e[i]
        return Polynomial(self.n_vars, terms, self.laurent)

    def drop_variable(self, i: int) -> "Polynomial":
        if any(e[i] for e in self.terms):
            raise ValueError(f"variable {i} still occurs")
        return Polynomial(self.n_vars - 1, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()},
                          self.laurent)

    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [{"exp": list(e), "num": c.numerator, "den": c.denominator}
                      for e, c in sorted(self.terms.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        terms = []
        laurent = False
        for t in data["terms"]:
            exp = tuple(t["exp"])
            laurent = laurent or any(e < 0 for e in exp)
            terms.append((exp, Fraction(int(t["num"]), int(t.get("den", 1)))))
        return cls(int(data["n_vars"]), terms, laurent=laurent)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self:
            mono = "*".join(f"x{i}^{a}" if a != 1 else f"x{i}" for i, a in enumerate(e) if a)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)
